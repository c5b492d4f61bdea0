#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hetdiff {

/// Columnar numeric table with ordered string metadata, serializable
/// to CSV (metadata as leading comment lines) or JSON.
class OutputTable {
public:
    explicit OutputTable(std::vector<std::string> columns);

    /// Inserts or overwrites a metadata entry, preserving first-seen order.
    void set_metadata(const std::string& key, const std::string& value);

    /// Appends one row; throws std::invalid_argument on size mismatch
    /// or non-finite entries.
    void add_row(const std::vector<double>& row);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& metadata() const {
        return metadata_;
    }

    std::string to_csv() const;
    std::string to_json() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> metadata_;
    std::vector<std::vector<double>> rows_;
};

/// Provenance record written next to (or embedded in) every CLI output.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::string version;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::pair<std::string, std::string>> output_digests;

    std::string to_json() const;
};

/// Single JSON document holding both the manifest and the table.
std::string combined_json(const RunManifest& manifest, const OutputTable& table);

/// Formats with 17 significant digits, enough to round-trip a double.
std::string format_sig17(double v);

/// Shortest decimal form that parses back to exactly v; used for
/// metadata echoes of scalar settings.
std::string format_compact(double v);

std::string json_escape(const std::string& s);

std::uint64_t fnv1a64(std::string_view data);

std::string hex64(std::uint64_t v);

/// Writes via a temporary file in the same directory and renames it
/// into place; throws io_error on any failure.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace hetdiff
