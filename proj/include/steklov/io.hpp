#pragma once
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "steklov/errors.hpp"

namespace steklov {

using json = nlohmann::json;

// Parse a JSON document, reporting line/column on failure.
inline json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; convert to line:column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail("ConfigError", origin + ":" + std::to_string(line) + ":" +
                                std::to_string(col) + ": " + e.what());
    }
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigError", "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path.string());
}

// Write-temp-then-rename so partially written artifacts are never observed.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail("ConfigError", "cannot write " + tmp.string());
        out << content;
        if (!out.good()) fail("ConfigError", "short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

// Shortest round-trip decimal form, identical across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shorter %.15g / %.16g form when it round-trips
    for (int prec = 15; prec <= 16; ++prec) {
        char b2[40];
        std::snprintf(b2, sizeof(b2), "%.*g", prec, v);
        if (std::stod(b2) == v) return b2;
    }
    return buf;
}

// FNV-1a 64-bit, used as the content hash that keys the spectrum cache.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace steklov
