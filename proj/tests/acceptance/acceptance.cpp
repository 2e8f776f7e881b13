// SPDX-License-Identifier: Apache-2.0
// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "loraseq/cli.hpp"
#include "loraseq/corpus.hpp"
#include "loraseq/encoder.hpp"
#include "loraseq/lora.hpp"
#include "loraseq/metrics.hpp"
#include "loraseq/numerics.hpp"
#include "loraseq/stats.hpp"

using namespace loraseq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const stats::PairedSample kThreeTasks{{"ner", "pos", "dep"}, {89, 89, 73}, {90, 97, 97}};

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "loraseq-acceptance";
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

Outcome f1_fidelity() {
  Outcome o;
  const double cases[][3] = {{0.86, 0.93, 0.89}, {0.89, 0.90, 0.89}, {0.73, 0.74, 0.73}};
  for (const auto& c : cases) {
    const double f1 = metrics::f1_score(c[0], c[1]);
    o.require(std::fabs(f1 - c[2]) <= 0.005, "F1(" + fmt(c[0], 2) + "," + fmt(c[1], 2) + ")=" + fmt(f1));
    o.detail += (o.detail.empty() ? "" : " ") + fmt(f1);
  }
  return o;
}

Outcome sample_moments() {
  Outcome o;
  const auto a = stats::sample_mean_var(kThreeTasks.a);
  const auto b = stats::sample_mean_var(kThreeTasks.b);
  const double crit = stats::critical_value(0.05, 4);
  o.require(std::fabs(a.mean - 83.67) <= 0.05, "mean_a " + fmt(a.mean));
  o.require(std::fabs(b.mean - 94.67) <= 0.05, "mean_b " + fmt(b.mean));
  o.require(std::fabs(a.variance - 85.31) <= 0.05, "var_a " + fmt(a.variance));
  o.require(std::fabs(b.variance - 16.34) <= 0.05, "var_b " + fmt(b.variance));
  o.require(std::fabs(crit - 2.776) <= 0.001, "critical " + fmt(crit));
  if (o.pass) {
    o.detail = "means " + fmt(a.mean, 2) + "/" + fmt(b.mean, 2) + ", variances " + fmt(a.variance, 2) + "/" +
               fmt(b.variance, 2) + ", critical(0.05,4) " + fmt(crit, 3);
  }
  return o;
}

Outcome discrepancy() {
  Outcome o;
  const auto r = stats::compare_models(kThreeTasks, 0.05);
  o.require(std::fabs(r.t - (-1.616)) <= 0.001, "t " + fmt(r.t));
  o.require(r.df == 2, "df " + std::to_string(r.df));

  // Reference values t = 0.12 and df = 4 must be flagged as mismatches.
  const auto dir = scratch_dir();
  corpus::write_file(dir / "pairs.csv", "task,model_a,model_b\nner,89,90\npos,89,97\ndep,73,97\n");
  cli::CompareOptions opts;
  opts.data = dir / "pairs.csv";
  opts.expected.t = 0.12;
  opts.expected.df = 4;
  std::ostringstream out, err;
  nlohmann::ordered_json report;
  o.require(cli::run_compare(opts, out, err, &report) == 0, "compare failed: " + err.str());
  bool t_flagged = false, df_flagged = false;
  for (const auto& c : report["expected"]) {
    if (c["field"] == "t") t_flagged = !c["matches"].get<bool>();
    if (c["field"] == "df") df_flagged = !c["matches"].get<bool>();
  }
  o.require(t_flagged && df_flagged, "report did not flag reference t and df");
  if (o.pass) o.detail = "t " + fmt(r.t) + ", df 2; report flags reference t=0.12, df=4";
  return o;
}

Outcome lora_invariants() {
  Outcome o;
  SeededRng rng(101);

  // Init identity on a full encoder.
  encoder::ModelConfig cfg;
  cfg.vocab_size = 20;
  cfg.n_tags = 5;
  cfg.n_deprels = 4;
  auto model = encoder::build_model(cfg, rng);
  const std::vector<std::size_t> ids = {3, 7, 11, 4, 19};
  o.require(encoder::tag_logits(model, ids) == encoder::tag_logits(model.stripped(), ids), "init identity");

  double worst_merge = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d_in = 2 + rng.below(40), d_out = 2 + rng.below(40);
    const std::size_t rank = 1 + rng.below(std::min(d_in, d_out) - 1);
    lora::AdaptedLinear layer{random_normal(d_out, d_in, rng), lora::lora_init(d_in, d_out, rank, 8.0, rng)};
    layer.adapter->b = random_normal(d_out, rank, rng);
    Matrix x = random_normal(1 + rng.below(8), d_in, rng);
    worst_merge = std::max(worst_merge, max_abs_diff(lora::lora_forward(layer, x), matmul_nt(x, lora::lora_merge(layer))));
  }
  o.require(worst_merge < 1e-9, "merge diff " + std::to_string(worst_merge));

  // Adapter-level gradient check.
  lora::AdaptedLinear layer{random_normal(9, 12, rng), lora::lora_init(12, 9, 3, 6.0, rng)};
  layer.adapter->b = random_normal(9, 3, rng);
  Matrix x = random_normal(5, 12, rng);
  Matrix up = random_normal(5, 9, rng);
  auto objective = [&](const lora::AdaptedLinear& l) {
    Matrix y = lora::lora_forward(l, x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y.data()[i] * up.data()[i];
    return s;
  };
  auto grads = lora::lora_grads(layer, x, up);
  auto with = [&](bool a_side) {
    return [&, a_side](const Matrix& v) {
      auto l = layer;
      (a_side ? l.adapter->a : l.adapter->b) = v;
      return objective(l);
    };
  };
  const double err_a = relative_error(grads.grad_a, finite_diff_grad(with(true), layer.adapter->a));
  const double err_b = relative_error(grads.grad_b, finite_diff_grad(with(false), layer.adapter->b));
  o.require(err_a < 1e-5 && err_b < 1e-5, "adapter grad rel err " + std::to_string(std::max(err_a, err_b)));

  // End-to-end through the encoder, with B moved off zero so dL/dA is nonzero.
  encoder::ModelConfig small = cfg;
  small.d_model = 8;
  small.n_heads = 2;
  small.d_ff = 12;
  small.d_arc = 4;
  small.rank = 2;
  small.max_len = 8;
  auto m = encoder::build_model(small, rng);
  for (auto& l : m.layers) l.query.adapter->b = random_normal(8, 2, rng, 0.5);
  std::vector<encoder::Example> batch(2);
  batch[0].token_ids = {3, 4, 5, 6};
  batch[0].tags = {0, 1, 2, 3};
  batch[1].token_ids = {7, 8, 9};
  batch[1].tags = {4, 0, 1};
  encoder::Gradients g;
  encoder::batch_loss(m, batch, encoder::Task::tag, &g);
  Matrix& a0 = m.layers[0].query.adapter->a;
  const Matrix a0_init = a0;
  Matrix numeric = finite_diff_grad(
      [&](const Matrix& v) {
        a0 = v;
        const double loss = encoder::batch_loss(m, batch, encoder::Task::tag);
        a0 = a0_init;
        return loss;
      },
      a0_init);
  const double e2e = relative_error(g.at("layers.0.query.lora_a"), numeric);
  o.require(e2e < 1e-4, "end-to-end rel err " + std::to_string(e2e));

  // Freeze invariant.
  const auto before = m;
  auto opt = encoder::OptimizerState::for_model(m);
  for (int step = 0; step < 100; ++step) encoder::train_step(m, batch, encoder::Task::tag, opt);
  auto now = m.parameters();
  auto then = before.parameters();
  bool frozen_ok = true;
  for (std::size_t i = 0; i < now.size(); ++i)
    if (!now[i].trainable) frozen_ok = frozen_ok && now[i].value->bitwise_equal(*then[i].value);
  o.require(frozen_ok, "frozen weights changed");

  SeededRng r2(1);
  const auto count = lora::trainable_param_count(lora::lora_init(64, 64, 4, 8.0, r2));
  o.require(count == 512, "param count " + std::to_string(count));

  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "merge max diff %.1e, adapter grad err %.1e, end-to-end err %.1e, 512 params",
                  worst_merge, std::max(err_a, err_b), e2e);
    o.detail = buf;
  }
  return o;
}

double eval_metric(const std::string& task, const std::filesystem::path& data, const std::filesystem::path& ckpt,
                   const char* metric, Outcome& o) {
  cli::EvalOptions opts;
  opts.task = task;
  opts.data = data;
  opts.checkpoint = ckpt;
  opts.seed = 1;
  std::ostringstream out, err;
  nlohmann::ordered_json report;
  if (cli::run_eval(opts, out, err, &report) != 0) {
    o.require(false, task + " eval failed: " + err.str());
    return 0.0;
  }
  return report["metrics"][metric].get<double>();
}

Outcome learnability() {
  Outcome o;
  const auto dir = scratch_dir();
  const auto tagging = corpus::make_fixture(corpus::FixtureKind::tagging, 200, 1, dir);
  const auto parsing = corpus::make_fixture(corpus::FixtureKind::parsing, 200, 1, dir);
  double seconds[2] = {0, 0};
  std::string out_detail;
  for (int which = 0; which < 2; ++which) {
    cli::TrainOptions t;
    t.task = which == 0 ? "pos" : "dep";
    t.data = which == 0 ? tagging : parsing;
    t.out = dir / (t.task + ".ckpt");
    t.steps = 500;
    t.quiet = true;
    std::ostringstream out, err;
    const auto start = std::chrono::steady_clock::now();
    cli::TrainResult result;
    if (cli::run_train(t, out, err, &result) != 0) {
      o.require(false, t.task + " training failed: " + err.str());
      continue;
    }
    seconds[which] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(seconds[which] < 60.0, t.task + " took " + fmt(seconds[which], 1) + "s");
    const double score = eval_metric(t.task, t.data, t.out, which == 0 ? "accuracy" : "uas", o);
    const double floor = which == 0 ? 0.95 : 0.90;
    o.require(score >= floor, t.task + " " + fmt(score));
    out_detail += (which == 0 ? "tagging accuracy " : ", parsing UAS ") + fmt(score) + " (" + fmt(seconds[which], 1) +
                  "s, final loss " + fmt(result.losses.back()) + ")";
  }
  if (o.pass) o.detail = out_detail;
  return o;
}

// Hand-worked values for the golden file (see the metrics unit tests).
Outcome metric_oracles() {
  Outcome o;
  SeededRng rng(2024);
  const char* tag_set[] = {"O", "B-PER", "I-PER", "B-LOC", "I-LOC"};
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> gold(rng.below(16)), pred;
    for (auto& t : gold) t = tag_set[rng.below(5)];
    pred = gold;
    for (auto& t : pred)
      if (rng.uniform() < 0.3) t = tag_set[rng.below(5)];
    const auto gs = metrics::extract_spans(gold);
    const auto ps = metrics::extract_spans(pred);
    double tp = 0;
    for (const auto& a : gs)
      for (const auto& b : ps) tp += (a.label == b.label && a.start == b.start && a.end == b.end) ? 1 : 0;
    const double p = ps.empty() ? 0 : tp / ps.size();
    const double r = gs.empty() ? 0 : tp / gs.size();
    const double f = p + r == 0 ? 0 : 2 * p * r / (p + r);
    const auto got = metrics::span_prf(gs, ps);
    if (std::fabs(got.precision - p) > 1e-12 || std::fabs(got.recall - r) > 1e-12 || std::fabs(got.f1 - f) > 1e-12)
      ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " span oracle mismatches");

  int las_violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    corpus::Sentence s;
    metrics::ArcPrediction p;
    const std::size_t n = 1 + rng.below(10);
    for (std::size_t i = 0; i < n; ++i) {
      corpus::Token t;
      t.form = "w";
      t.head = rng.below(n + 1);
      t.deprel = rng.below(2) ? "a" : "b";
      s.tokens.push_back(t);
      p.heads.push_back(rng.below(n + 1));
      p.deprels.push_back(rng.below(2) ? "a" : "b");
    }
    const auto r = metrics::uas_las({s}, {p});
    las_violations += r.las > r.uas ? 1 : 0;
  }
  o.require(las_violations == 0, "las > uas in " + std::to_string(las_violations) + " cases");

  const auto pairs = corpus::parse_summary_pairs(corpus::read_file(LORASEQ_TEST_DATA "/summary_golden.jsonl"));
  const auto sw = metrics::load_stopwords(LORASEQ_TEST_DATA "/golden_stopwords.txt");
  const double compression[] = {5.0 / 10.0, 1.0 / 7.0, 4.0 / 8.0, 1.0, 3.0 / 9.0};
  const double overlap[] = {1.0, 1.0 / 3.0, 2.0 / 3.0, 1.0, 1.0 / 3.0};
  o.require(pairs.size() == 5, "golden file has " + std::to_string(pairs.size()) + " pairs");
  for (std::size_t i = 0; i < pairs.size() && i < 5; ++i) {
    const double cr = metrics::compression_rate(pairs[i].source, *pairs[i].system);
    const double ko = metrics::keyword_overlap(pairs[i].source, *pairs[i].system, 3, sw);
    o.require(std::fabs(cr - compression[i]) < 1e-12, "pair " + std::to_string(i + 1) + " compression " + fmt(cr));
    o.require(std::fabs(ko - overlap[i]) < 1e-12, "pair " + std::to_string(i + 1) + " overlap " + fmt(ko));
  }
  if (o.pass) o.detail = "1000 span cases, 500 attachment cases, 5 golden pairs";
  return o;
}

Outcome statistics() {
  Outcome o;
  SeededRng rng(7);
  double worst_sym = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    stats::PairedSample s;
    const std::size_t n = 2 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      s.labels.push_back("x");
      s.a.push_back(rng.uniform(50, 100));
      s.b.push_back(rng.uniform(50, 100));
    }
    const double t = stats::paired_t(s).t;
    stats::PairedSample swapped{s.labels, s.b, s.a}, shifted = s, rescaled = s;
    const double c = rng.uniform(-40, 40), k = rng.uniform(0.1, 20);
    for (std::size_t i = 0; i < n; ++i) {
      shifted.a[i] += c;
      shifted.b[i] += c;
      rescaled.a[i] *= k;
      rescaled.b[i] *= k;
    }
    const double scale = std::max(1.0, std::fabs(t));
    worst_sym = std::max({worst_sym, std::fabs(stats::paired_t(swapped).t + t) / scale,
                          std::fabs(stats::paired_t(shifted).t - t) / scale,
                          std::fabs(stats::paired_t(rescaled).t - t) / scale});
  }
  o.require(worst_sym < 1e-7, "invariance error " + std::to_string(worst_sym));

  double worst_cdf = 0.0;
  for (double t = -15.0; t <= 15.0; t += 0.05)
    worst_cdf = std::max(worst_cdf, std::fabs(stats::t_cdf(t, 1) - (0.5 + std::atan(t) / std::numbers::pi)));
  const double at_quantile = std::fabs(stats::t_cdf(2.7764451051977987, 4) - 0.975);
  o.require(worst_cdf < 1e-10, "df=1 cdf err " + std::to_string(worst_cdf));
  o.require(at_quantile < 1e-10, "df=4 quantile err " + std::to_string(at_quantile));

  double worst_round = 0.0;
  for (double alpha : {0.10, 0.05, 0.01})
    for (std::size_t df = 1; df <= 30; ++df)
      worst_round = std::max(worst_round, std::fabs(stats::two_tailed_p(stats::critical_value(alpha, df), df) - alpha));
  o.require(worst_round < 1e-8, "quantile round trip err " + std::to_string(worst_round));

  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "invariance %.1e, cauchy cdf %.1e, df4 quantile %.1e, round trip %.1e", worst_sym,
                  worst_cdf, at_quantile, worst_round);
    o.detail = buf;
  }
  return o;
}

nlohmann::ordered_json pipeline_run(const std::filesystem::path& dir, Outcome& o) {
  std::ostringstream out, err;
  nlohmann::ordered_json combined;
  cli::FixtureOptions f;
  f.kind = "tagging";
  f.size = 60;
  f.seed = 9;
  f.out = dir;
  o.require(cli::run_fixture(f, out, err) == 0, "fixture: " + err.str());

  cli::TrainOptions t;
  t.task = "pos";
  t.data = dir / "tagging.conllu";
  t.seed = 9;
  t.steps = 40;
  t.quiet = true;
  t.out = dir / "m.ckpt";
  o.require(cli::run_train(t, out, err) == 0, "train: " + err.str());

  cli::EvalOptions e;
  e.task = "pos";
  e.data = t.data;
  e.checkpoint = t.out;
  e.seed = 9;
  nlohmann::ordered_json eval_report;
  o.require(cli::run_eval(e, out, err, &eval_report) == 0, "eval: " + err.str());

  const double acc = eval_report["metrics"]["accuracy"].get<double>();
  corpus::write_file(dir / "scores.csv", "task,model_a,model_b\npos," + std::to_string(acc) + ",0.5\nner,0.7,0.4\ndep,0.6,0.5\n");
  cli::CompareOptions c;
  c.data = dir / "scores.csv";
  c.seed = 9;
  nlohmann::ordered_json compare_report;
  o.require(cli::run_compare(c, out, err, &compare_report) == 0, "compare: " + err.str());

  combined["eval"] = cli::without_timestamp(eval_report);
  combined["compare"] = cli::without_timestamp(compare_report);
  return combined;
}

Outcome determinism() {
  Outcome o;
  const auto root = scratch_dir();
  std::filesystem::create_directories(root / "a");
  std::filesystem::create_directories(root / "b");
  const auto first = pipeline_run(root / "a", o);
  const auto second = pipeline_run(root / "b", o);
  o.require(first == second, "reports differ");
  o.require(!first["eval"].contains("timestamp"), "timestamp not stripped");
  if (o.pass) o.detail = "eval and compare reports identical across two runs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"F1-formula fidelity", f1_fidelity},
      {"Means, variances and critical value", sample_moments},
      {"Documented t/df discrepancy", discrepancy},
      {"LoRA invariant suite", lora_invariants},
      {"Desk-scale learnability", learnability},
      {"Metric oracles", metric_oracles},
      {"Statistics properties", statistics},
      {"Pipeline determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "loraseq-acceptance");
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
