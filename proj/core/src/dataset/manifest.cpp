#include "aadg/dataset/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "aadg/canonical_json.hpp"
#include "aadg/errors.hpp"

namespace aadg::dataset {

namespace {

std::string utc_now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

void append_line(const std::filesystem::path& path, const std::string& line) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw IoFailure("manifest: cannot open for append " + path.string());
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
    if (!out.good()) throw IoFailure("manifest: append failed " + path.string());
}

} // namespace

std::filesystem::path manifest_path(const std::filesystem::path& root) {
    return root / "manifest.jsonl";
}

std::filesystem::path record_dir(const std::filesystem::path& root, const std::string& record_id) {
    return root / "records" / record_id;
}

Manifest load_manifest(const std::filesystem::path& root) {
    Manifest manifest;
    const auto path = manifest_path(root);
    if (!std::filesystem::exists(root)) throw IoFailure("dataset root does not exist: " + root.string());
    if (!std::filesystem::exists(path)) return manifest; // empty dataset

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("manifest: cannot open " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto eol = content.find('\n', pos);
        const bool terminated = eol != std::string::npos;
        std::string line = content.substr(pos, terminated ? eol - pos : std::string::npos);
        pos = terminated ? eol + 1 : content.size();
        if (line.empty()) continue;
        ++line_no;

        auto parsed = nlohmann::json::parse(line, nullptr, false);
        if (parsed.is_discarded()) {
            if (!terminated) {
                // the crash-truncated tail; everything before it is intact
                manifest.partial_lines += 1;
                manifest.warnings.push_back("partial trailing line ignored (" +
                                            std::to_string(line.size()) + " bytes)");
            } else {
                manifest.warnings.push_back("line " + std::to_string(line_no) +
                                            ": unparseable, skipped");
            }
            continue;
        }

        const std::string kind = parsed.value("kind", "");
        if (kind == "header") {
            manifest.schema_version = parsed.value("schema_version", "");
            manifest.created_at = parsed.value("created_at", "");
            if (parsed.contains("config")) manifest.config = parsed["config"];
        } else if (kind == "record") {
            try {
                auto record = record_from_json(parsed.value("record", nlohmann::json::object()));
                auto issues = ledger_issues(record.ledger, record.components.size());
                for (const auto& issue : issues)
                    manifest.warnings.push_back("record " + record.record_id + ": " + issue);
                manifest.records.push_back(std::move(record));
            } catch (const Error& e) {
                manifest.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            manifest.warnings.push_back("line " + std::to_string(line_no) + ": unknown kind '" +
                                        kind + "'");
        }
    }
    return manifest;
}

std::set<std::string> completed_ids(const Manifest& manifest) {
    std::set<std::string> ids;
    for (const auto& r : manifest.records) ids.insert(r.record_id);
    return ids;
}

ManifestWriter::ManifestWriter(std::filesystem::path root, nlohmann::json config_snapshot)
    : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_ / "records", ec);
    if (ec) throw IoFailure("dataset: cannot create " + (root_ / "records").string());

    const auto path = manifest_path(root_);
    if (std::filesystem::exists(path)) {
        ids_ = completed_ids(load_manifest(root_));
        return;
    }
    nlohmann::json header = {{"kind", "header"},
                             {"schema_version", std::string(kSchemaVersion)},
                             {"created_at", utc_now_iso8601()},
                             {"config", std::move(config_snapshot)}};
    append_line(path, canonical_json(header) + "\n");
}

std::set<std::string> ManifestWriter::ids() const {
    std::lock_guard<std::mutex> lock(mu_);
    return ids_;
}

std::filesystem::path ManifestWriter::write_record(const DatasetRecord& record) {
    const auto dir = record_dir(root_, record.record_id);

    // every referenced file must exist before the record becomes visible
    auto require_file = [this](const std::string& rel) {
        if (!std::filesystem::exists(root_ / rel))
            throw IoFailure("record references missing file: " + rel);
    };
    require_file(record.final_wav_path);
    for (const auto& c : record.components) require_file(c.wav_path);

    const auto record_json = canonical_json(to_json(record));

    std::lock_guard<std::mutex> lock(mu_);
    if (ids_.count(record.record_id))
        throw DuplicateRecordId("record id already in manifest: " + record.record_id);

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoFailure("dataset: cannot create " + dir.string());

    // atomic publish: temp file then rename
    const auto tmp = dir / ".record.json.tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("record: cannot open " + tmp.string());
        out << record_json << "\n";
        out.flush();
        if (!out.good()) throw IoFailure("record: write failed " + tmp.string());
    }
    std::filesystem::rename(tmp, dir / "record.json", ec);
    if (ec) throw IoFailure("record: rename failed for " + (dir / "record.json").string());

    nlohmann::json line = {{"kind", "record"}, {"record", to_json(record)}};
    append_line(manifest_path(root_), canonical_json(line) + "\n");
    ids_.insert(record.record_id);
    return dir;
}

} // namespace aadg::dataset
