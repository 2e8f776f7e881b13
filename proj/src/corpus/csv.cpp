// SPDX-License-Identifier: Apache-2.0
#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "text_util.hpp"

namespace loraseq::corpus {

namespace {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line;
};

std::vector<CsvRecord> read_records(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    CsvRecord rec{{}, line};
    std::string field;
    bool record_done = false;
    while (!record_done) {
      field.clear();
      if (i < text.size() && text[i] == '"') {
        const std::size_t quote_line = line;
        ++i;
        for (;;) {
          if (i >= text.size()) throw ParseError(quote_line, "unterminated quoted field");
          char c = text[i];
          if (c == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (c == '\n') ++line;
          field += c;
          ++i;
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw ParseError(line, "unexpected character after closing quote");
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') throw ParseError(line, "quote inside unquoted field");
          field += text[i++];
        }
      }
      rec.fields.push_back(field);
      if (i >= text.size()) {
        record_done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        if (text[i] == '\r') ++i;
        if (i < text.size() && text[i] == '\n') ++i;
        ++line;
        record_done = true;
      }
    }
    // Skip fully blank lines (a single empty field).
    if (!(rec.fields.size() == 1 && rec.fields[0].empty())) records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  for (auto& r : read_records(text)) rows.push_back(std::move(r.fields));
  return rows;
}

std::vector<LabeledRecord> parse_labeled_csv(std::string_view text) {
  auto records = read_records(text);
  if (records.empty()) throw ParseError(1, "missing header \"text,label\"", "row");
  const auto& header = records.front().fields;
  if (header.size() != 2 || detail::trim(header[0]) != "text" || detail::trim(header[1]) != "label") {
    throw ParseError(records.front().line, "header must be \"text,label\"");
  }
  std::vector<LabeledRecord> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    if (f.size() != 2) {
      throw ParseError(r, "expected 2 fields, found " + std::to_string(f.size()), "row");
    }
    out.push_back({f[0], f[1]});
  }
  return out;
}

}  // namespace loraseq::corpus
