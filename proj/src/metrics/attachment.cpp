// SPDX-License-Identifier: Apache-2.0
#include "loraseq/error.hpp"
#include "loraseq/metrics.hpp"

namespace loraseq::metrics {

AttachmentScores uas_las(const std::vector<corpus::Sentence>& gold,
                         const std::vector<ArcPrediction>& pred) {
  if (gold.size() != pred.size()) {
    throw EvalError("uas_las: " + std::to_string(gold.size()) + " gold sentences vs " +
                    std::to_string(pred.size()) + " predictions");
  }
  std::size_t total = 0;
  std::size_t head_hits = 0;
  std::size_t label_hits = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& g = gold[s];
    const auto& p = pred[s];
    if (p.heads.size() != g.size() || p.deprels.size() != g.size()) {
      throw EvalError("uas_las: sentence " + std::to_string(s + 1) + " has " +
                      std::to_string(g.size()) + " tokens but " + std::to_string(p.heads.size()) +
                      " predicted heads");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& tok = g.tokens[i];
      if (!tok.head) {
        throw EvalError("uas_las: gold token " + std::to_string(i + 1) + " of sentence " +
                        std::to_string(s + 1) + " has no head");
      }
      ++total;
      if (*tok.head == p.heads[i]) {
        ++head_hits;
        if (tok.deprel && *tok.deprel == p.deprels[i]) ++label_hits;
      }
    }
  }
  AttachmentScores out;
  out.tokens = total;
  if (total > 0) {
    out.uas = static_cast<double>(head_hits) / static_cast<double>(total);
    out.las = static_cast<double>(label_hits) / static_cast<double>(total);
  }
  return out;
}

}  // namespace loraseq::metrics
