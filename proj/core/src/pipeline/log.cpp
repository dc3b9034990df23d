#include "aadg/pipeline/log.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>

#include "aadg/errors.hpp"

namespace aadg::pipeline {

namespace {
std::mutex g_sink_mutex;

const char* level_name(LogLevel level) {
    switch (level) {
    case LogLevel::debug: return "debug";
    case LogLevel::info: return "info";
    case LogLevel::warn: return "warn";
    case LogLevel::error: return "error";
    }
    return "?";
}
} // namespace

LogLevel log_level_from_string(std::string_view name) {
    if (name == "debug") return LogLevel::debug;
    if (name == "info") return LogLevel::info;
    if (name == "warn") return LogLevel::warn;
    if (name == "error") return LogLevel::error;
    throw ConfigError("unknown log level: " + std::string(name));
}

Logger& Logger::global() {
    static Logger logger;
    return logger;
}

void Logger::set_sink(std::function<void(const std::string&)> sink) { sink_ = std::move(sink); }

void Logger::log(LogLevel level, std::string_view record_id, std::string_view stage,
                 std::string_view msg, nlohmann::json extra) {
    if (static_cast<int>(level) < static_cast<int>(level_)) return;

    auto now = std::chrono::system_clock::now();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();

    nlohmann::json line = std::move(extra);
    line["ts_ms"] = ms;
    line["level"] = level_name(level);
    if (!record_id.empty()) line["record_id"] = std::string(record_id);
    if (!stage.empty()) line["stage"] = std::string(stage);
    line["msg"] = std::string(msg);

    std::string text = line.dump();
    std::lock_guard<std::mutex> lock(g_sink_mutex);
    if (sink_) {
        sink_(text);
    } else {
        std::cerr << text << "\n";
    }
}

} // namespace aadg::pipeline
