// SPDX-License-Identifier: Apache-2.0

#ifndef COOPVANET_CSV_HPP
#define COOPVANET_CSV_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace coopvanet {

/// RFC 4180 field quoting: fields holding a comma, quote, CR or LF are
/// wrapped in quotes with embedded quotes doubled.
std::string csv_escape(std::string_view field);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

struct RunManifest {
    std::string command;
    std::string config_path;  // "<built-in default>" when none was given
    std::optional<std::uint64_t> seed;
    std::string output_path;
    std::string tool_version;
    std::string timestamp;  // ISO 8601, UTC
};

std::string manifest_json(const RunManifest& manifest);

/// Current UTC time as YYYY-MM-DDThh:mm:ssZ.
std::string utc_timestamp();

}  // namespace coopvanet

#endif  // COOPVANET_CSV_HPP
