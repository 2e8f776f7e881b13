// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loraseq/rng.hpp"

namespace loraseq::corpus {

struct Token {
  std::string form;
  std::optional<std::string> upos;
  std::optional<std::size_t> head;  // 0 = ROOT, otherwise 1-based
  std::optional<std::string> deprel;
  std::optional<std::string> iob;  // O | B-X | I-X

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::optional<std::string> id;

  std::size_t size() const noexcept { return tokens.size(); }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct SummaryPair {
  std::string source;
  std::string reference;
  std::optional<std::string> system;
};

struct LabeledRecord {
  std::string text;
  std::string label;
};

/// CoNLL-U reader. Comment lines start with '#' ("# sent_id = ..." sets the
/// sentence id), blank lines end a sentence, multiword ranges and empty nodes
/// are skipped, '_' means absent. Columns are tab-separated; a row without
/// any tab is split on runs of whitespace instead. Errors are ParseError with
/// the offending line number.
std::vector<Sentence> parse_conllu(std::string_view text);
std::string write_conllu(const std::vector<Sentence>& sentences);

/// Two-column "token<TAB>tag" data, blank-line separated sentences.
std::vector<Sentence> parse_iob(std::string_view text);
std::string write_iob(const std::vector<Sentence>& sentences);

/// True for "O", "B-X" and "I-X" with a nonempty X.
bool is_valid_iob_tag(std::string_view tag);

/// RFC-4180 records, header included. ParseError carries the 1-based
/// physical line where the bad record starts.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// CSV with header "text,label". A data row with a field count other than 2
/// is a ParseError naming the data-row number.
std::vector<LabeledRecord> parse_labeled_csv(std::string_view text);

/// JSON-lines with "source" (required, nonempty), "reference" and optional
/// "system". Blank lines are skipped.
std::vector<SummaryPair> parse_summary_pairs(std::string_view text);

/// Seeded Fisher-Yates shuffle, then the first floor(ratio * n) items go to
/// train and the rest to test.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_train_test(std::vector<T> items, double ratio,
                                                           std::uint64_t seed);

template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_80_20(std::vector<T> items, std::uint64_t seed) {
  return split_train_test(std::move(items), 0.8, seed);
}

/// Number of training items for a split of n at `ratio`.
std::size_t train_size(std::size_t n, double ratio);

template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_train_test(std::vector<T> items, double ratio,
                                                           std::uint64_t seed) {
  SeededRng rng(seed);
  rng.shuffle(items);
  const std::size_t cut = train_size(items.size(), ratio);
  std::vector<T> test(std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(cut)),
                      std::make_move_iterator(items.end()));
  items.resize(cut);
  return {std::move(items), std::move(test)};
}

/// Token inventory with reserved ids PAD = 0, UNK = 1, ROOT = 2.
class Vocab {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;
  static constexpr std::size_t kRoot = 2;
  static constexpr std::size_t kReserved = 3;

  Vocab();
  /// Rebuild from the non-reserved tokens in id order.
  static Vocab from_tokens(const std::vector<std::string>& tokens);

  std::size_t id(std::string_view token) const;
  const std::string& token(std::size_t id) const;
  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return tokens_.size(); }
  /// Non-reserved tokens in id order.
  std::vector<std::string> entries() const;

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.tokens_ == b.tokens_; }

 private:
  void push(const std::string& token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Forms with frequency >= min_freq, most frequent first, ties in byte order.
Vocab build_vocab(const std::vector<Sentence>& sentences, std::size_t min_freq = 1);

enum class FixtureKind { tagging, parsing, ner, summary };

std::optional<FixtureKind> parse_fixture_kind(std::string_view name);
std::string_view fixture_kind_name(FixtureKind kind);
std::string_view fixture_file_name(FixtureKind kind);

/// Synthetic corpora with exact generating rules:
///   tagging  UPOS is a fixed function of the word form (heads left absent)
///   parsing  the first token attaches to ROOT, every other token to its left
///            neighbour; the label is a fixed function of the dependent's tag
///   ner      fillers tagged O with gazetteer entities spliced in
///   summary  multi-sentence sources built around a repeated topic word
std::vector<Sentence> make_tagging_sentences(std::size_t size, std::uint64_t seed);
std::vector<Sentence> make_parsing_sentences(std::size_t size, std::uint64_t seed);
std::vector<Sentence> make_ner_sentences(std::size_t size, std::uint64_t seed);
std::vector<SummaryPair> make_summary_pairs(std::size_t size, std::uint64_t seed);

std::string render_summary_pairs(const std::vector<SummaryPair>& pairs);

/// Writes the fixture into `out_dir` (created if needed) and returns the file
/// path. Throws IoError on failure, ConfigError when size == 0.
std::filesystem::path make_fixture(FixtureKind kind, std::size_t size, std::uint64_t seed,
                                   const std::filesystem::path& out_dir);

/// Whole-file read; IoError when the file is missing or unreadable.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace loraseq::corpus
