// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace loraseq::cli::detail {

std::string utc_timestamp();

/// 64-bit FNV-1a of `bytes`, as 16 hex digits. Used as a stable model id.
std::string fnv1a_hex(std::string_view bytes);

/// Common report preamble: schema_version, tool_version, kind.
nlohmann::ordered_json report_skeleton(std::string_view kind);

/// Writes `report` (pretty-printed, trailing newline) to `path`.
void write_report(const nlohmann::ordered_json& report, const std::filesystem::path& path);

/// Left-aligned first column, right-aligned numeric columns.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

std::string fixed(double v, int digits = 4);

}  // namespace loraseq::cli::detail
