// SPDX-License-Identifier: Apache-2.0
#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "text_util.hpp"

namespace loraseq::corpus {

bool is_valid_iob_tag(std::string_view tag) {
  if (tag == "O") return true;
  return tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-';
}

std::vector<Sentence> parse_iob(std::string_view text) {
  std::vector<Sentence> out;
  Sentence current;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    auto line = detail::trim(lines[ln]);
    if (line.empty()) {
      if (!current.tokens.empty()) out.push_back(std::move(current));
      current = Sentence{};
      continue;
    }
    auto cols = lines[ln].find('\t') != std::string_view::npos ? detail::split_char(line, '\t')
                                                               : detail::split_whitespace(line);
    if (cols.size() != 2) {
      throw ParseError(line_no, "expected token and tag, found " + std::to_string(cols.size()) +
                                    " columns");
    }
    auto form = detail::trim(cols[0]);
    auto tag = detail::trim(cols[1]);
    if (form.empty()) throw ParseError(line_no, "empty token");
    if (!is_valid_iob_tag(tag)) {
      throw ParseError(line_no, "malformed IOB tag '" + std::string(tag) + "'");
    }
    Token tok;
    tok.form = std::string(form);
    tok.iob = std::string(tag);
    current.tokens.push_back(std::move(tok));
  }
  if (!current.tokens.empty()) out.push_back(std::move(current));
  return out;
}

std::string write_iob(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      out += t.form;
      out += '\t';
      out += t.iob.value_or("O");
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace loraseq::corpus
