// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "corpus/text_util.hpp"
#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "loraseq/metrics.hpp"

namespace loraseq::metrics {

extern const char* const kDefaultStopwordsText;

namespace {

std::string normalize_word(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) continue;
    out += u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
  }
  return out;
}

std::map<std::string, std::size_t> content_counts(std::string_view text, const Stopwords& stopwords) {
  std::map<std::string, std::size_t> counts;
  for (auto& w : normalized_tokens(text))
    if (!stopwords.contains(w)) ++counts[w];
  return counts;
}

}  // namespace

std::vector<std::string> normalized_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto raw : corpus::detail::split_whitespace(text)) {
    auto w = normalize_word(raw);
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

double compression_rate(std::string_view source, std::string_view summary) {
  const auto src = corpus::detail::split_whitespace(source).size();
  if (src == 0) throw EvalError("compression_rate: source has no tokens");
  return static_cast<double>(corpus::detail::split_whitespace(summary).size()) /
         static_cast<double>(src);
}

Stopwords parse_stopwords(std::string_view text) {
  Stopwords out;
  for (auto line : corpus::detail::split_lines(text)) {
    auto t = corpus::detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto w = normalize_word(t);
    if (!w.empty()) out.insert(std::move(w));
  }
  return out;
}

Stopwords load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(corpus::read_file(path));
}

const Stopwords& default_stopwords() {
  static const Stopwords words = parse_stopwords(kDefaultStopwordsText);
  return words;
}

std::vector<std::string> keywords(std::string_view text, std::size_t k, const Stopwords& stopwords) {
  if (k < 1) throw ConfigError("keywords: k must be at least 1");
  auto counts = content_counts(text, stopwords);
  // std::map iteration is already byte-ordered, so a stable sort by count
  // leaves ties lexicographic.
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].first);
  return out;
}

double keyword_overlap(std::string_view source, std::string_view summary, std::size_t k,
                       const Stopwords& stopwords) {
  const auto kw = keywords(source, k, stopwords);
  if (kw.empty()) return 0.0;
  const auto summary_tokens = normalized_tokens(summary);
  const std::set<std::string> types(summary_tokens.begin(), summary_tokens.end());
  std::size_t hits = 0;
  for (const auto& w : kw) hits += types.contains(w) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(kw.size());
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (auto tok : corpus::detail::split_whitespace(text)) {
    if (!current.empty()) current += ' ';
    current += tok;
    const char last = tok.back();
    if (last == '.' || last == '!' || last == '?') {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string extractive_baseline(std::string_view source, double ratio, const Stopwords& stopwords) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ConfigError("extractive_baseline: ratio must lie in (0, 1]");
  const auto sentences = split_sentences(source);
  if (sentences.empty()) throw EvalError("extractive_baseline: empty source");

  const auto freq = content_counts(source, stopwords);
  std::vector<double> score(sentences.size(), 0.0);
  std::vector<std::size_t> length(sentences.size(), 0);
  std::size_t total = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    length[s] = corpus::detail::split_whitespace(sentences[s]).size();
    total += length[s];
    for (const auto& w : normalized_tokens(sentences[s])) {
      auto it = freq.find(w);
      if (it != freq.end()) score[s] += static_cast<double>(it->second);
    }
  }

  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  const double budget = ratio * static_cast<double>(total) + 1e-9;
  std::vector<bool> keep(sentences.size(), false);
  std::size_t used = 0;
  for (std::size_t idx : order) {
    if (used == 0 || static_cast<double>(used + length[idx]) <= budget) {
      keep[idx] = true;
      used += length[idx];
    }
  }
  std::string out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (!keep[s]) continue;
    if (!out.empty()) out += ' ';
    out += sentences[s];
  }
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw EvalError("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace loraseq::metrics
