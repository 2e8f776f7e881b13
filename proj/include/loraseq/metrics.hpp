// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loraseq/corpus.hpp"

namespace loraseq::metrics {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision, recall and their harmonic mean; every 0/0 is taken as 0.
PRF prf(const ConfusionCounts& c);
/// Harmonic mean of an already-computed precision/recall pair (0 if both 0).
double f1_score(double precision, double recall);

struct Span {
  std::string label;
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive

  friend auto operator<=>(const Span&, const Span&) = default;
};

/// Maximal B-X (I-X)* runs. An I-X that does not continue an open X run is
/// treated as B-X. Anything that is not a B-/I- tag closes the open run.
std::vector<Span> extract_spans(std::span<const std::string> tags);

/// Strict matching: a predicted span is a true positive only if label, start
/// and end all agree with a gold span.
ConfusionCounts span_counts(std::span<const Span> gold, std::span<const Span> pred);
PRF span_prf(std::span<const Span> gold, std::span<const Span> pred);

/// Fraction of positions with identical tags. Throws EvalError on a length
/// mismatch; an empty pair of sequences scores 0.
double token_accuracy(std::span<const std::string> gold, std::span<const std::string> pred);

struct ArcPrediction {
  std::vector<std::size_t> heads;
  std::vector<std::string> deprels;
};

struct AttachmentScores {
  double uas = 0.0;
  double las = 0.0;
  std::size_t tokens = 0;
};

/// Corpus-level micro-averaged attachment scores. Gold tokens must carry a
/// head; a gold token without a deprel never counts as labeled-correct.
AttachmentScores uas_las(const std::vector<corpus::Sentence>& gold,
                         const std::vector<ArcPrediction>& pred);

/// Lowercase (ASCII), punctuation stripped, empty tokens dropped.
std::vector<std::string> normalized_tokens(std::string_view text);

/// |summary tokens| / |source tokens| on whitespace tokens. EvalError when the
/// source has no tokens.
double compression_rate(std::string_view source, std::string_view summary);

using Stopwords = std::set<std::string, std::less<>>;

/// One word per line, '#' starts a comment, words are normalized the same
/// way as text tokens.
Stopwords parse_stopwords(std::string_view text);
Stopwords load_stopwords(const std::filesystem::path& path);
/// Built-in Filipino + English function-word list (same content as
/// data/stopwords.txt).
const Stopwords& default_stopwords();

/// Top-k content words by frequency, ties in byte order.
std::vector<std::string> keywords(std::string_view text, std::size_t k, const Stopwords& stopwords);

/// Share of the source's keywords that occur in the summary; 0 when the
/// source has no keywords.
double keyword_overlap(std::string_view source, std::string_view summary, std::size_t k,
                       const Stopwords& stopwords);

/// Sentences split after '.', '!' or '?'. Each is scored by the summed corpus
/// frequency of its content words; the highest-scoring sentences (earlier
/// first on ties) are taken greedily while they fit in ratio * |source|
/// tokens, the best one always, and are emitted in source order.
std::string extractive_baseline(std::string_view source, double ratio, const Stopwords& stopwords);

std::vector<std::string> split_sentences(std::string_view text);

/// Sample Pearson correlation; nullopt when fewer than two points or either
/// side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

}  // namespace loraseq::metrics
