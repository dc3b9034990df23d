#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

namespace aadg::pipeline {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

LogLevel log_level_from_string(std::string_view name); // throws ConfigError

// Structured JSON-lines logger ({"ts","level","record_id","stage","msg",...}),
// one line per event, stderr by default. Thread-safe.
class Logger {
public:
    static Logger& global();

    void set_level(LogLevel level) { level_ = level; }
    void set_sink(std::function<void(const std::string&)> sink);

    void log(LogLevel level, std::string_view record_id, std::string_view stage,
             std::string_view msg, nlohmann::json extra = nlohmann::json::object());

private:
    LogLevel level_ = LogLevel::info;
    std::function<void(const std::string&)> sink_;
};

} // namespace aadg::pipeline
