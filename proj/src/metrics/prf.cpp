// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "loraseq/error.hpp"
#include "loraseq/metrics.hpp"

namespace loraseq::metrics {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string_view run_label(std::string_view tag) { return tag.substr(2); }

}  // namespace

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom == 0.0 ? 0.0 : 2.0 * precision * recall / denom;
}

PRF prf(const ConfusionCounts& c) {
  PRF out;
  out.precision = ratio(c.tp, c.tp + c.fp);
  out.recall = ratio(c.tp, c.tp + c.fn);
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

std::vector<Span> extract_spans(std::span<const std::string> tags) {
  std::vector<Span> spans;
  bool open = false;
  Span current;
  auto close = [&](std::size_t end) {
    if (open) {
      current.end = end;
      spans.push_back(current);
      open = false;
    }
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    std::string_view tag = tags[i];
    const bool begin = tag.size() > 2 && tag.starts_with("B-");
    const bool inside = tag.size() > 2 && tag.starts_with("I-");
    if (inside && open && run_label(tag) == current.label) continue;
    close(i);
    if (begin || inside) {
      current = Span{std::string(run_label(tag)), i, i};
      open = true;
    }
  }
  close(tags.size());
  return spans;
}

ConfusionCounts span_counts(std::span<const Span> gold, std::span<const Span> pred) {
  std::vector<Span> g(gold.begin(), gold.end());
  std::vector<Span> p(pred.begin(), pred.end());
  std::sort(g.begin(), g.end());
  std::sort(p.begin(), p.end());
  // Multiset intersection, so duplicated predictions are not double-counted.
  std::vector<Span> common;
  std::set_intersection(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(common));
  ConfusionCounts c;
  c.tp = common.size();
  c.fp = p.size() - c.tp;
  c.fn = g.size() - c.tp;
  return c;
}

PRF span_prf(std::span<const Span> gold, std::span<const Span> pred) {
  return prf(span_counts(gold, pred));
}

double token_accuracy(std::span<const std::string> gold, std::span<const std::string> pred) {
  if (gold.size() != pred.size()) {
    throw EvalError("token_accuracy: " + std::to_string(gold.size()) + " gold vs " +
                    std::to_string(pred.size()) + " predicted tags");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += gold[i] == pred[i] ? 1 : 0;
  return ratio(hits, gold.size());
}

}  // namespace loraseq::metrics
