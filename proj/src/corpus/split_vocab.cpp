// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"

namespace loraseq::corpus {

std::size_t train_size(std::size_t n, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split ratio must lie in (0, 1)");
  // The small epsilon keeps ratios like 0.8 from flooring 8.0 down to 7.
  auto cut = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  return std::min(cut, n);
}

Vocab::Vocab() {
  push("<pad>");
  push("<unk>");
  push("<root>");
}

void Vocab::push(const std::string& token) {
  index_.emplace(token, tokens_.size());
  tokens_.push_back(token);
}

Vocab Vocab::from_tokens(const std::vector<std::string>& tokens) {
  Vocab v;
  for (const auto& t : tokens) {
    if (v.index_.contains(t)) throw DataError("duplicate vocabulary entry '" + t + "'");
    v.push(t);
  }
  return v;
}

std::size_t Vocab::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end() || it->second < kReserved) return kUnk;
  return it->second;
}

bool Vocab::contains(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it != index_.end() && it->second >= kReserved;
}

const std::string& Vocab::token(std::size_t id) const {
  if (id >= tokens_.size()) throw IndexError("vocabulary id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

std::vector<std::string> Vocab::entries() const {
  return {tokens_.begin() + kReserved, tokens_.end()};
}

Vocab build_vocab(const std::vector<Sentence>& sentences, std::size_t min_freq) {
  if (min_freq < 1) throw ConfigError("min_freq must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& s : sentences)
    for (const auto& t : s.tokens) ++counts[t.form];
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> kept;
  const Vocab reserved;
  for (const auto& [form, count] : ranked) {
    // A literal "<unk>" in the data stays mapped to the reserved id.
    if (count >= min_freq && reserved.id(form) == Vocab::kUnk && form != reserved.token(Vocab::kPad) &&
        form != reserved.token(Vocab::kUnk) && form != reserved.token(Vocab::kRoot)) {
      kept.push_back(form);
    }
  }
  return Vocab::from_tokens(kept);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace loraseq::corpus
