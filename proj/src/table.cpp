#include "hetdiff/table.hpp"

#include "hetdiff/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace hetdiff {

namespace {

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    out += json_escape(s);
    out += '"';
}

void append_string_pairs(std::string& out,
                         const std::vector<std::pair<std::string, std::string>>& pairs) {
    out += '{';
    bool first = true;
    for (const auto& [key, value] : pairs) {
        if (!first) {
            out += ',';
        }
        first = false;
        append_json_string(out, key);
        out += ':';
        append_json_string(out, value);
    }
    out += '}';
}

} // namespace

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw std::invalid_argument("table needs at least one column");
    }
    for (const std::string& name : columns_) {
        if (name.empty() || name.find_first_of(",\n\r\"") != std::string::npos) {
            throw std::invalid_argument("column names must be nonempty and delimiter-free");
        }
    }
}

void OutputTable::set_metadata(const std::string& key, const std::string& value) {
    if (key.empty() || key.find_first_of("\n\r") != std::string::npos ||
        value.find_first_of("\n\r") != std::string::npos) {
        throw std::invalid_argument("metadata entries must be nonempty single-line text");
    }
    for (auto& entry : metadata_) {
        if (entry.first == key) {
            entry.second = value;
            return;
        }
    }
    metadata_.emplace_back(key, value);
}

void OutputTable::add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("row width does not match the column count");
    }
    for (double v : row) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("table entries must be finite");
        }
    }
    rows_.push_back(row);
}

std::string OutputTable::to_csv() const {
    std::string out;
    for (const auto& [key, value] : metadata_) {
        out += "# ";
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += format_sig17(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string OutputTable::to_json() const {
    std::string out = "{\"columns\":[";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        append_json_string(out, columns_[i]);
    }
    out += "],\"metadata\":";
    append_string_pairs(out, metadata_);
    out += ",\"rows\":[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r > 0) {
            out += ',';
        }
        out += '[';
        for (std::size_t i = 0; i < rows_[r].size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += format_sig17(rows_[r][i]);
        }
        out += ']';
    }
    out += "]}";
    return out;
}

std::string RunManifest::to_json() const {
    std::string out = "{\"command\":";
    append_json_string(out, command);
    out += ",\"argv\":[";
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        append_json_string(out, argv[i]);
    }
    out += "],\"version\":";
    append_json_string(out, version);
    out += ",\"seed\":";
    out += std::to_string(seed);
    out += ",\"wall_seconds\":";
    out += format_sig17(wall_seconds);
    out += ",\"parameters\":";
    append_string_pairs(out, parameters);
    out += ",\"output_digests\":";
    append_string_pairs(out, output_digests);
    out += '}';
    return out;
}

std::string combined_json(const RunManifest& manifest, const OutputTable& table) {
    std::string out = "{\"manifest\":";
    out += manifest.to_json();
    out += ",\"table\":";
    out += table.to_json();
    out += "}\n";
    return out;
}

std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_compact(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            return buf;
        }
    }
    return format_sig17(v);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\b':
            out += "\\b";
            break;
        case '\f':
            out += "\\f";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw io_error("cannot open temporary file " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw io_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw io_error("cannot move output into place at " + path);
    }
}

} // namespace hetdiff
