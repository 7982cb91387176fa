// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/csv.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>

#include <json.hpp>

namespace coopvanet {

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string format_double(double value) {
    if (value == 0.0) return "0";  // folds -0
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << "\r\n";
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["command"] = manifest.command;
    doc["config_path"] = manifest.config_path;
    doc["seed"] = manifest.seed ? nlohmann::ordered_json(*manifest.seed) : nlohmann::ordered_json();
    doc["output_path"] = manifest.output_path;
    doc["tool_version"] = manifest.tool_version;
    doc["timestamp"] = manifest.timestamp;
    return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    const auto n = std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf.data(), n);
}

}  // namespace coopvanet
