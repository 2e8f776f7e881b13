// SPDX-License-Identifier: Apache-2.0
#include <json.hpp>

#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "text_util.hpp"

namespace loraseq::corpus {

std::vector<SummaryPair> parse_summary_pairs(std::string_view text) {
  std::vector<SummaryPair> out;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    auto line = detail::trim(lines[ln]);
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw ParseError(line_no, "not a JSON object");
    }
    if (!j.is_object()) throw ParseError(line_no, "not a JSON object");
    auto text_field = [&](const char* key) -> std::optional<std::string> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) throw ParseError(line_no, std::string("\"") + key + "\" must be a string");
      return it->get<std::string>();
    };
    auto source = text_field("source");
    if (!source) throw ParseError(line_no, "missing \"source\"");
    if (detail::trim(*source).empty()) throw ParseError(line_no, "\"source\" is empty");
    SummaryPair pair;
    pair.source = *source;
    pair.reference = text_field("reference").value_or("");
    pair.system = text_field("system");
    out.push_back(std::move(pair));
  }
  return out;
}

std::string render_summary_pairs(const std::vector<SummaryPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    nlohmann::ordered_json j;
    j["source"] = p.source;
    j["reference"] = p.reference;
    if (p.system) j["system"] = *p.system;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace loraseq::corpus
