// SPDX-License-Identifier: Apache-2.0
#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "text_util.hpp"

namespace loraseq::corpus {

namespace {

std::optional<std::string> optional_field(std::string_view v) {
  if (v == "_") return std::nullopt;
  return std::string(v);
}

std::string_view field_or_underscore(const std::optional<std::string>& v) {
  return v ? std::string_view(*v) : std::string_view("_");
}

struct PendingSentence {
  Sentence sentence;
  std::vector<std::size_t> lines;  // source line of each token

  void finish(std::vector<Sentence>& out) {
    const std::size_t n = sentence.tokens.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& head = sentence.tokens[i].head;
      if (!head) continue;
      if (*head > n) {
        throw ParseError(lines[i], "HEAD " + std::to_string(*head) +
                                       " is out of range for a sentence of " +
                                       std::to_string(n) + " tokens");
      }
      if (*head == i + 1) throw ParseError(lines[i], "token is its own head");
    }
    if (n > 0) out.push_back(std::move(sentence));
    sentence = Sentence{};
    lines.clear();
  }
};

}  // namespace

std::vector<Sentence> parse_conllu(std::string_view text) {
  std::vector<Sentence> out;
  PendingSentence pending;
  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    const std::string_view line = lines[ln];
    if (detail::trim(line).empty()) {
      pending.finish(out);
      continue;
    }
    if (line.front() == '#') {
      auto body = detail::trim(line.substr(1));
      if (body.starts_with("sent_id")) {
        auto eq = body.find('=');
        if (eq != std::string_view::npos) pending.sentence.id = std::string(detail::trim(body.substr(eq + 1)));
      }
      continue;
    }
    auto cols = line.find('\t') != std::string_view::npos ? detail::split_char(line, '\t')
                                                          : detail::split_whitespace(line);
    if (cols.size() != 10) {
      throw ParseError(line_no, "expected 10 columns, found " + std::to_string(cols.size()));
    }
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;
    auto index = detail::parse_index(id);
    if (!index || *index != pending.sentence.tokens.size() + 1) {
      throw ParseError(line_no, "unexpected token ID '" + std::string(id) + "'");
    }
    Token tok;
    tok.form = std::string(cols[1]);
    tok.upos = optional_field(cols[3]);
    if (cols[6] != "_") {
      auto head = detail::parse_index(cols[6]);
      if (!head) throw ParseError(line_no, "HEAD '" + std::string(cols[6]) + "' is not an integer");
      tok.head = *head;
    }
    tok.deprel = optional_field(cols[7]);
    pending.sentence.tokens.push_back(std::move(tok));
    pending.lines.push_back(line_no);
  }
  pending.finish(out);
  return out;
}

std::string write_conllu(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    if (s.id) out += "# sent_id = " + *s.id + "\n";
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const Token& t = s.tokens[i];
      out += std::to_string(i + 1);
      out += '\t';
      out += t.form;
      out += "\t_\t";
      out += field_or_underscore(t.upos);
      out += "\t_\t_\t";
      out += t.head ? std::to_string(*t.head) : std::string("_");
      out += '\t';
      out += field_or_underscore(t.deprel);
      out += "\t_\t_\n";
    }
    out += '\n';
  }
  return out;
}

}  // namespace loraseq::corpus
