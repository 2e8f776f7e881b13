// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "cli/report.hpp"
#include "loraseq/cli.hpp"
#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "loraseq/metrics.hpp"

namespace loraseq::cli {

namespace {

using corpus::Sentence;
using nlohmann::ordered_json;

TaskKind require_task(const std::string& name) {
  auto t = parse_task(name);
  if (!t) throw ConfigError("unknown task '" + name + "' (expected ner, pos, dep or sum)");
  return *t;
}

TaskKind require_sequence_task(const std::string& name) {
  const TaskKind t = require_task(name);
  if (t == TaskKind::sum) throw ConfigError("task 'sum' is evaluated with the sum-eval subcommand");
  return t;
}

void require_ratio(double split) {
  if (!(split > 0.0 && split < 1.0)) throw ConfigError("split ratio must lie in (0, 1)");
}

std::vector<Sentence> load_sentences(TaskKind task, const std::filesystem::path& path) {
  const std::string text = corpus::read_file(path);
  return task == TaskKind::ner ? corpus::parse_iob(text) : corpus::parse_conllu(text);
}

/// Gold sequence labels: IOB tags for NER, UPOS for POS.
std::vector<std::string> gold_tags(const Sentence& s, TaskKind task) {
  std::vector<std::string> tags;
  tags.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& field = task == TaskKind::ner ? s.tokens[i].iob : s.tokens[i].upos;
    if (!field) {
      throw DataError(std::string("token ") + std::to_string(i + 1) + " ('" + s.tokens[i].form +
                      "') has no " + (task == TaskKind::ner ? "IOB tag" : "UPOS tag"));
    }
    tags.push_back(*field);
  }
  return tags;
}

void require_arcs(const Sentence& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.tokens[i].head || !s.tokens[i].deprel) {
      throw DataError("token " + std::to_string(i + 1) + " ('" + s.tokens[i].form +
                      "') has no head/deprel annotation");
    }
  }
}

/// Sorted label inventories drawn from the whole file so the test split
/// cannot contain unseen labels.
struct Inventory {
  std::vector<std::string> tags;
  std::vector<std::string> deprels;
};

Inventory build_inventory(const std::vector<Sentence>& sentences, TaskKind task) {
  std::set<std::string> tags;
  std::set<std::string> deprels;
  for (const auto& s : sentences) {
    if (task == TaskKind::dep) {
      require_arcs(s);
      for (const auto& t : s.tokens) deprels.insert(*t.deprel);
    } else {
      for (auto& t : gold_tags(s, task)) tags.insert(std::move(t));
    }
  }
  Inventory inv;
  inv.tags.assign(tags.begin(), tags.end());
  inv.deprels.assign(deprels.begin(), deprels.end());
  if (inv.tags.empty()) inv.tags.push_back("_");
  if (inv.deprels.empty()) inv.deprels.push_back("_");
  return inv;
}

std::map<std::string, std::size_t> index_of(const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < labels.size(); ++i) m.emplace(labels[i], i);
  return m;
}

std::vector<std::size_t> token_ids(const Sentence& s, const corpus::Vocab& vocab) {
  std::vector<std::size_t> ids;
  ids.reserve(s.size());
  for (const auto& t : s.tokens) ids.push_back(vocab.id(t.form));
  return ids;
}

encoder::Example to_example(const Sentence& s, TaskKind task, const corpus::Vocab& vocab,
                            const std::map<std::string, std::size_t>& tag_index,
                            const std::map<std::string, std::size_t>& deprel_index) {
  encoder::Example ex;
  ex.token_ids = token_ids(s, vocab);
  if (task == TaskKind::dep) {
    for (const auto& t : s.tokens) {
      ex.heads.push_back(*t.head);
      ex.deprels.push_back(deprel_index.at(*t.deprel));
    }
  } else {
    for (const auto& tag : gold_tags(s, task)) ex.tags.push_back(tag_index.at(tag));
  }
  return ex;
}

encoder::ModelConfig model_config(const ModelOptions& m, std::size_t vocab_size,
                                  const Inventory& inv) {
  encoder::ModelConfig c;
  c.vocab_size = vocab_size;
  c.d_model = m.d_model;
  c.n_heads = m.n_heads;
  c.n_layers = m.n_layers;
  c.max_len = m.max_len;
  c.d_ff = m.d_ff;
  c.d_arc = m.d_arc;
  c.rank = m.rank;
  c.alpha = m.alpha;
  c.adapt_query = false;
  c.adapt_value = false;
  std::string_view rest = m.adapt;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (item == "query") {
      c.adapt_query = true;
    } else if (item == "value") {
      c.adapt_value = true;
    } else if (item != "none" && !item.empty()) {
      throw ConfigError("unknown adapted projection '" + std::string(item) + "'");
    }
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  c.n_tags = inv.tags.size();
  c.n_deprels = inv.deprels.size();
  c.validate();
  return c;
}

void check_lengths(const std::vector<Sentence>& sentences, std::size_t max_len) {
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].size() > max_len) {
      throw DataError("sentence " + std::to_string(i + 1) + " has " +
                      std::to_string(sentences[i].size()) + " tokens, more than max_len " +
                      std::to_string(max_len));
    }
  }
}

ordered_json split_echo(std::size_t total, std::size_t train, std::size_t test) {
  return {{"total", total}, {"train", train}, {"test", test}};
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

stats::PairedSample read_scores(const std::filesystem::path& path) {
  const auto rows = corpus::parse_csv(corpus::read_file(path));
  if (rows.empty() || rows.front() != std::vector<std::string>{"task", "model_a", "model_b"}) {
    throw ParseError(1, "header must be \"task,model_a,model_b\"", "row");
  }
  stats::PairedSample sample;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != 3) throw ParseError(r, "expected 3 fields, found " + std::to_string(f.size()), "row");
    auto a = parse_number(f[1]);
    auto b = parse_number(f[2]);
    if (!a || !b) throw ParseError(r, "scores must be numbers", "row");
    sample.labels.push_back(f[0]);
    sample.a.push_back(*a);
    sample.b.push_back(*b);
  }
  if (sample.a.size() < 2) {
    throw DataError("need ≥ 2 paired observations, found " + std::to_string(sample.a.size()));
  }
  return sample;
}

}  // namespace

std::optional<TaskKind> parse_task(std::string_view name) {
  if (name == "ner") return TaskKind::ner;
  if (name == "pos") return TaskKind::pos;
  if (name == "dep") return TaskKind::dep;
  if (name == "sum") return TaskKind::sum;
  return std::nullopt;
}

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::ner: return "ner";
    case TaskKind::pos: return "pos";
    case TaskKind::dep: return "dep";
    case TaskKind::sum: return "sum";
  }
  return "unknown";
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const EvalError*>(&e) != nullptr) return kExitEval;
  if (dynamic_cast<const DegenerateSampleError*>(&e) != nullptr) return kExitEval;
  if (dynamic_cast<const Error*>(&e) != nullptr) return kExitInput;
  return kExitEval;
}

int run_fixture(const FixtureOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto kind = corpus::parse_fixture_kind(opts.kind);
    if (!kind) throw ConfigError("unknown fixture kind '" + opts.kind + "'");
    const auto path = corpus::make_fixture(*kind, opts.size, opts.seed, opts.out);
    if (opts.json) {
      ordered_json summary = detail::report_skeleton("fixture");
      summary["fixture"] = corpus::fixture_kind_name(*kind);
      summary["size"] = opts.size;
      summary["seed"] = opts.seed;
      summary["path"] = path.string();
      out << summary.dump(2) << '\n';
    } else {
      out << "wrote " << path.string() << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

int run_train(const TrainOptions& opts, std::ostream& out, std::ostream& err, TrainResult* result) {
  return guarded(err, [&] {
    const TaskKind task = require_sequence_task(opts.task);
    require_ratio(opts.split);
    if (opts.batch < 1) throw ConfigError("batch size must be at least 1");
    if (!(opts.lr > 0.0)) throw ConfigError("learning rate must be positive");
    if (opts.out.empty()) throw ConfigError("--out checkpoint path is required");

    const auto sentences = load_sentences(task, opts.data);
    if (sentences.empty()) throw DataError("no sentences in " + opts.data.string());
    const Inventory inv = build_inventory(sentences, task);
    auto [train, test] = corpus::split_train_test(sentences, opts.split, opts.seed);
    if (train.empty()) throw DataError("training split is empty");
    check_lengths(train, opts.model.max_len);

    const corpus::Vocab vocab = corpus::build_vocab(train, 1);
    const auto config = model_config(opts.model, vocab.size(), inv);
    SeededRng init_rng(opts.seed);
    encoder::Model model = encoder::build_model(config, init_rng);

    const auto tag_index = index_of(inv.tags);
    const auto deprel_index = index_of(inv.deprels);
    std::vector<encoder::Example> examples;
    examples.reserve(train.size());
    for (const auto& s : train) examples.push_back(to_example(s, task, vocab, tag_index, deprel_index));

    const encoder::Task objective = task == TaskKind::dep ? encoder::Task::arc : encoder::Task::tag;
    auto opt = encoder::OptimizerState::for_model(model, {opts.lr, 0.9, 0.999, 1e-8});
    SeededRng order_rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t cursor = order.size();
    std::vector<double> losses;
    std::vector<encoder::Example> batch;
    for (std::size_t step = 1; step <= opts.steps; ++step) {
      batch.clear();
      while (batch.size() < std::min(opts.batch, examples.size())) {
        if (cursor == order.size()) {
          order_rng.shuffle(order);
          cursor = 0;
        }
        batch.push_back(examples[order[cursor++]]);
      }
      const double loss = encoder::train_step(model, batch, objective, opt);
      losses.push_back(loss);
      if (!opts.quiet && !opts.json) out << "step " << step << " loss " << detail::fixed(loss, 6) << '\n';
    }

    nlohmann::json meta;
    meta["task"] = task_name(task);
    meta["vocab"] = vocab.entries();
    meta["tags"] = inv.tags;
    meta["deprels"] = inv.deprels;
    meta["seed"] = opts.seed;
    meta["split"] = opts.split;
    meta["steps"] = opts.steps;
    meta["batch"] = opts.batch;
    meta["lr"] = opts.lr;
    meta["train_size"] = train.size();
    meta["test_size"] = test.size();
    encoder::save_checkpoint(model, meta, opts.out);
    if (opts.json) {
      ordered_json summary = detail::report_skeleton("train");
      summary["task"] = task_name(task);
      summary["checkpoint"] = opts.out.string();
      summary["trainable_parameters"] = model.trainable_count();
      summary["dataset"] = split_echo(sentences.size(), train.size(), test.size());
      summary["seed"] = opts.seed;
      summary["steps"] = opts.steps;
      summary["final_loss"] = losses.empty() ? ordered_json(nullptr) : ordered_json(losses.back());
      summary["losses"] = losses;
      out << summary.dump(2) << '\n';
    } else {
      out << "saved checkpoint " << opts.out.string() << " (" << model.trainable_count()
          << " trainable parameters)\n";
    }
    if (result != nullptr) *result = {losses, train.size(), test.size()};
    return static_cast<int>(kExitOk);
  });
}

int run_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err, ordered_json* report_out) {
  return guarded(err, [&] {
    const TaskKind task = require_sequence_task(opts.task);
    require_ratio(opts.split);
    const auto sentences = load_sentences(task, opts.data);
    if (sentences.empty()) throw DataError("no sentences in " + opts.data.string());
    auto [train, test] = corpus::split_train_test(sentences, opts.split, opts.seed);
    if (test.empty()) throw DataError("test split is empty");
    for (const auto& s : test) {
      if (task == TaskKind::dep) {
        require_arcs(s);
      } else {
        gold_tags(s, task);
      }
    }

    ordered_json report = detail::report_skeleton("eval");
    report["task"] = task_name(task);
    ordered_json config_echo;
    config_echo["data"] = opts.data.filename().string();
    config_echo["split"] = opts.split;
    config_echo["oracle"] = opts.oracle;
    config_echo["ensure_single_root"] = opts.ensure_single_root;

    // Predictions as label strings, aligned with `test`.
    std::vector<std::vector<std::string>> pred_tags;
    std::vector<metrics::ArcPrediction> pred_arcs;
    if (opts.oracle) {
      report["model_id"] = "oracle";
      for (const auto& s : test) {
        if (task == TaskKind::dep) {
          metrics::ArcPrediction p;
          for (const auto& t : s.tokens) {
            p.heads.push_back(*t.head);
            p.deprels.push_back(*t.deprel);
          }
          pred_arcs.push_back(std::move(p));
        } else {
          pred_tags.push_back(gold_tags(s, task));
        }
      }
    } else {
      if (!opts.checkpoint) throw ConfigError("--checkpoint is required unless --oracle is given");
      const std::string bytes = corpus::read_file(*opts.checkpoint);
      auto ck = encoder::deserialize_checkpoint(bytes);
      const auto& meta = ck.metadata;
      if (meta.value("task", std::string{}) != task_name(task)) {
        throw ConfigError("checkpoint was trained for task '" + meta.value("task", std::string{"?"}) +
                          "', not '" + std::string(task_name(task)) + "'");
      }
      const auto vocab = corpus::Vocab::from_tokens(meta.at("vocab").get<std::vector<std::string>>());
      const auto tags = meta.at("tags").get<std::vector<std::string>>();
      const auto deprels = meta.at("deprels").get<std::vector<std::string>>();
      if (vocab.size() != ck.model.config.vocab_size || tags.size() != ck.model.config.n_tags ||
          deprels.size() != ck.model.config.n_deprels) {
        throw ConfigError("checkpoint metadata does not match its model config");
      }
      check_lengths(test, ck.model.config.max_len);
      report["model_id"] = detail::fnv1a_hex(bytes);
      config_echo["model"] = ck.model.config.to_json();
      for (const auto& s : test) {
        const auto ids = token_ids(s, vocab);
        if (task == TaskKind::dep) {
          const auto arcs = encoder::predict_arcs(ck.model, ids, opts.ensure_single_root);
          metrics::ArcPrediction p;
          p.heads = arcs.heads;
          for (std::size_t l : arcs.labels) p.deprels.push_back(deprels.at(l));
          pred_arcs.push_back(std::move(p));
        } else {
          std::vector<std::string> names;
          for (std::size_t t : encoder::predict_tags(ck.model, ids)) names.push_back(tags.at(t));
          pred_tags.push_back(std::move(names));
        }
      }
    }

    ordered_json m;
    std::vector<std::vector<std::string>> rows;
    if (task == TaskKind::dep) {
      const auto scores = metrics::uas_las(test, pred_arcs);
      // One predicted head per token: precision = recall = UAS.
      m["precision"] = scores.uas;
      m["recall"] = scores.uas;
      m["f1"] = scores.uas;
      m["uas"] = scores.uas;
      m["las"] = scores.las;
      rows.push_back({"Dependency Parsing", std::string(report["model_id"]), detail::fixed(scores.uas),
                      detail::fixed(scores.uas), detail::fixed(scores.uas)});
      rows.push_back({"  UAS / LAS", "", detail::fixed(scores.uas), detail::fixed(scores.las), ""});
    } else {
      std::vector<std::string> gold_flat;
      std::vector<std::string> pred_flat;
      metrics::ConfusionCounts spans;
      for (std::size_t i = 0; i < test.size(); ++i) {
        const auto gold = gold_tags(test[i], task);
        gold_flat.insert(gold_flat.end(), gold.begin(), gold.end());
        pred_flat.insert(pred_flat.end(), pred_tags[i].begin(), pred_tags[i].end());
        if (task == TaskKind::ner) {
          spans += metrics::span_counts(metrics::extract_spans(gold), metrics::extract_spans(pred_tags[i]));
        }
      }
      const double acc = metrics::token_accuracy(gold_flat, pred_flat);
      if (task == TaskKind::ner) {
        const auto p = metrics::prf(spans);
        m["precision"] = p.precision;
        m["recall"] = p.recall;
        m["f1"] = p.f1;
        m["accuracy"] = acc;
        rows.push_back({"Named Entity Recognition", std::string(report["model_id"]),
                        detail::fixed(p.precision), detail::fixed(p.recall), detail::fixed(p.f1)});
      } else {
        // Every token receives exactly one tag, so micro P = R = F1 = accuracy.
        m["precision"] = acc;
        m["recall"] = acc;
        m["f1"] = acc;
        m["accuracy"] = acc;
        rows.push_back({"Part of Speech Tagging", std::string(report["model_id"]), detail::fixed(acc),
                        detail::fixed(acc), detail::fixed(acc)});
      }
    }
    report["metrics"] = m;
    report["dataset"] = split_echo(sentences.size(), train.size(), test.size());
    report["seed"] = opts.seed;
    report["config"] = config_echo;
    report["timestamp"] = detail::utc_timestamp();

    if (opts.out) detail::write_report(report, *opts.out);
    if (opts.json) {
      out << report.dump(2) << '\n';
    } else {
      detail::print_table(out, {"Task", "Model", "Precision", "Recall", "F1-Score"}, rows);
    }
    if (report_out != nullptr) *report_out = report;
    return static_cast<int>(kExitOk);
  });
}

int run_sum_eval(const SumEvalOptions& opts, std::ostream& out, std::ostream& err,
                 ordered_json* report_out) {
  return guarded(err, [&] {
    if (!(opts.ratio > 0.0 && opts.ratio <= 1.0)) throw ConfigError("--ratio must lie in (0, 1]");
    if (opts.k < 1) throw ConfigError("--k must be at least 1");
    const auto pairs = corpus::parse_summary_pairs(corpus::read_file(opts.data));
    if (pairs.empty()) throw DataError("no summary pairs in " + opts.data.string());
    const metrics::Stopwords stopwords =
        opts.stopwords ? metrics::load_stopwords(*opts.stopwords) : metrics::default_stopwords();

    std::vector<double> compression;
    std::vector<double> overlap;
    ordered_json per_pair = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& p = pairs[i];
      const bool from_system = p.system.has_value();
      const std::string summary =
          from_system ? *p.system : metrics::extractive_baseline(p.source, opts.ratio, stopwords);
      const double cr = metrics::compression_rate(p.source, summary);
      const double ko = metrics::keyword_overlap(p.source, summary, opts.k, stopwords);
      compression.push_back(cr);
      overlap.push_back(ko);
      per_pair.push_back({{"index", i + 1},
                          {"summary_source", from_system ? "system" : "baseline"},
                          {"compression_rate", cr},
                          {"keyword_overlap", ko}});
      rows.push_back({std::to_string(i + 1), from_system ? "system" : "baseline", detail::fixed(cr),
                      detail::fixed(ko)});
    }
    const double n = static_cast<double>(pairs.size());
    const double mean_cr = std::accumulate(compression.begin(), compression.end(), 0.0) / n;
    const double mean_ko = std::accumulate(overlap.begin(), overlap.end(), 0.0) / n;
    const auto corr = metrics::pearson(compression, overlap);

    ordered_json report = detail::report_skeleton("sum-eval");
    report["task"] = "sum";
    report["model_id"] = "extractive-baseline";
    report["metrics"] = {{"compression_rate", mean_cr},
                         {"keyword_overlap", mean_ko},
                         {"correlation", corr ? ordered_json(*corr) : ordered_json(nullptr)}};
    report["pairs"] = per_pair;
    report["dataset"] = {{"pairs", pairs.size()}};
    report["seed"] = opts.seed;
    report["config"] = {{"data", opts.data.filename().string()},
                        {"ratio", opts.ratio},
                        {"k", opts.k},
                        {"stopwords", opts.stopwords ? opts.stopwords->filename().string() : "default"}};
    report["timestamp"] = detail::utc_timestamp();

    if (opts.out) detail::write_report(report, *opts.out);
    if (opts.json) {
      out << report.dump(2) << '\n';
    } else {
      rows.push_back({"mean", "", detail::fixed(mean_cr), detail::fixed(mean_ko)});
      detail::print_table(out, {"Pair", "Summary", "Compression", "Keyword overlap"}, rows);
      out << "pearson(compression, overlap) = " << (corr ? detail::fixed(*corr) : "undefined") << '\n';
    }
    if (report_out != nullptr) *report_out = report;
    return static_cast<int>(kExitOk);
  });
}

int run_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err,
                ordered_json* report_out) {
  return guarded(err, [&] {
    const auto sample = read_scores(opts.data);
    const auto r = stats::compare_models(sample, opts.alpha, opts.df);
    const auto checks = stats::check_expected(r, opts.expected);
    const double t_textbook = stats::paired_t_textbook(sample);
    const std::size_t mismatches = static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.matches; }));

    ordered_json report = detail::report_skeleton("compare");
    report["labels"] = sample.labels;
    const ordered_json fields = stats::to_json(r);
    for (const auto& [key, value] : fields.items()) report[key] = value;
    report["t_textbook"] = t_textbook;
    report["df_overridden"] = opts.df.has_value();
    report["expected"] = stats::to_json(checks);
    report["mismatches"] = mismatches;
    report["seed"] = opts.seed;
    report["config"] = {{"data", opts.data.filename().string()}, {"alpha", opts.alpha}};
    report["timestamp"] = detail::utc_timestamp();

    if (opts.out) detail::write_report(report, *opts.out);
    if (opts.json) {
      out << report.dump(2) << '\n';
    } else {
      std::vector<std::vector<std::string>> rows;
      rows.push_back({"Mean", detail::fixed(r.mean_a, 2), detail::fixed(r.mean_b, 2)});
      rows.push_back({"Observation", std::to_string(r.n), std::to_string(r.n)});
      rows.push_back({"Variance", detail::fixed(r.var_a, 2), detail::fixed(r.var_b, 2)});
      rows.push_back({"T-Stat.", detail::fixed(r.t, 4), ""});
      rows.push_back({"p-value", detail::fixed(r.p_two_tailed, 4), ""});
      rows.push_back({"Critical value", detail::fixed(r.critical, 3), ""});
      rows.push_back({"Significance level", detail::fixed(r.alpha, 2), ""});
      rows.push_back({"degrees of freedom", std::to_string(r.df), ""});
      detail::print_table(out, {"", "model_a", "model_b"}, rows);
      out << "Conclusion: " << r.verdict() << '\n';
      for (const auto& c : checks) {
        out << (c.matches ? "  ok        " : "  MISMATCH  ") << c.field << ": expected "
            << c.expected << ", recomputed " << detail::fixed(c.computed, 4) << '\n';
      }
    }
    if (report_out != nullptr) *report_out = report;
    return static_cast<int>(kExitOk);
  });
}

}  // namespace loraseq::cli
