#pragma once

// Append-only newline-delimited JSON result cache.  Records are keyed by
// (command, canonical JSON parameters); reads tolerate malformed lines with a
// warning, writes go through a temp file plus rename so a crash cannot leave
// a torn cache.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

namespace forbcfg {

inline constexpr const char* tool_version = "0.1.0";

// Cache file location: FORBCFG_CACHE environment variable if set, else
// forbcfg_cache.jsonl in the working directory.
inline std::string cache_path() {
    if (const char* env = std::getenv("FORBCFG_CACHE"); env && *env) return env;
    return "forbcfg_cache.jsonl";
}

struct RunRecord {
    std::string command;
    nlohmann::json parameters;  // canonical (sorted-key) parameter object
    nlohmann::json result;
    std::string version = tool_version;
    std::string timestamp;  // UTC, ISO 8601
};

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// nlohmann::json serializes objects with sorted keys, so dumping the
// parameter object gives a canonical key string.
inline std::string cache_key(const std::string& command, const nlohmann::json& parameters) {
    return command + " " + parameters.dump();
}

// Latest cached record for the key, or nullopt.  Malformed lines are skipped
// with a warning on stderr; an unreadable file is a plain miss.
inline std::optional<nlohmann::json> cache_get(const std::string& key,
                                               const std::string& path = cache_path()) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::optional<nlohmann::json> found;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("key")) {
            std::cerr << "forbcfg: warning: skipping malformed cache line " << lineno << " in "
                      << path << "\n";
            continue;
        }
        if (rec["key"] == key) found = rec;
    }
    return found;
}

// Appends one record atomically (copy to temp, append, rename).  Failure to
// write is a warning, never an error: computation results never depend on it.
inline void cache_put(const std::string& key, const RunRecord& record,
                      const std::string& path = cache_path()) {
    nlohmann::json line = {{"key", key},
                           {"command", record.command},
                           {"parameters", record.parameters},
                           {"result", record.result},
                           {"version", record.version},
                           {"timestamp", record.timestamp}};
    std::string existing;
    {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::ostringstream ss;
            ss << in.rdbuf();
            existing = ss.str();
        }
    }
    if (!existing.empty() && existing.back() != '\n') existing.push_back('\n');
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "forbcfg: warning: cache not writable at " << path
                      << "; result not cached\n";
            return;
        }
        out << existing << line.dump() << "\n";
        if (!out) {
            std::cerr << "forbcfg: warning: cache write failed at " << path
                      << "; result not cached\n";
            std::remove(tmp.c_str());
            return;
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::cerr << "forbcfg: warning: cache rename failed at " << path
                  << "; result not cached\n";
        std::remove(tmp.c_str());
    }
}

}  // namespace forbcfg
