// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <set>
#include <vector>

#include "corpus/text_util.hpp"
#include "loraseq/cli.hpp"
#include "loraseq/corpus.hpp"
#include "loraseq/error.hpp"
#include "loraseq/kernels.hpp"

namespace loraseq::cli {

namespace {

void add_model_options(CLI::App& cmd, ModelOptions& m) {
  cmd.add_option("--d-model", m.d_model, "Hidden width")->capture_default_str();
  cmd.add_option("--heads", m.n_heads, "Attention heads")->capture_default_str();
  cmd.add_option("--layers", m.n_layers, "Encoder layers")->capture_default_str();
  cmd.add_option("--max-len", m.max_len, "Longest sentence in tokens")->capture_default_str();
  cmd.add_option("--d-ff", m.d_ff, "Feed-forward width")->capture_default_str();
  cmd.add_option("--d-arc", m.d_arc, "Arc scorer projection width")->capture_default_str();
  cmd.add_option("--rank", m.rank, "Adapter rank")->capture_default_str();
  cmd.add_option("--alpha", m.alpha, "Adapter scaling numerator")->capture_default_str();
  cmd.add_option("--adapt", m.adapt, "Adapted projections: query,value | query | value | none")
      ->capture_default_str();
}

template <typename T>
void add_optional_path(CLI::App& cmd, const std::string& name, std::optional<T>& target,
                       const std::string& help) {
  cmd.add_option_function<std::string>(
      name, [&target](const std::string& v) { target = T(v); }, help);
}

void add_expect(CLI::App& cmd, const std::string& name, std::optional<double>& target) {
  cmd.add_option_function<double>(
      "--expect-" + name, [&target](double v) { target = v; },
      "Expected " + name + " to check against the recomputed value");
}

std::string option_name(std::string_view arg) {
  const auto eq = arg.find('=');
  return std::string(arg.substr(0, eq));
}

/// Replaces `--config FILE` with the file's key=value pairs as flags. Keys
/// already given on the command line are skipped so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> out;
  std::optional<std::string> file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[++i];
    } else if (args[i].starts_with("--config=")) {
      file = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (!file) return out;

  std::set<std::string> given;
  for (const auto& a : out)
    if (a.starts_with("--")) given.insert(option_name(a));
  const std::string text = corpus::read_file(*file);
  std::size_t line_no = 0;
  for (auto line : corpus::detail::split_lines(text)) {
    ++line_no;
    auto t = corpus::detail::trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';' || t.front() == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value in " + *file);
    std::string key(corpus::detail::trim(t.substr(0, eq)));
    std::string value(corpus::detail::trim(t.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    for (auto& c : key)
      if (c == '_') c = '-';
    const std::string flag = "--" + key;
    if (given.contains(flag)) continue;
    if (value == "true") {
      out.push_back(flag);
    } else if (value != "false") {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LoRA-adapted sequence labelling, parsing and evaluation tools", "loraseq"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string(LORASEQ_VERSION));
  bool show_isa = false;
  std::string config_file;  // consumed by expand_config, listed for --help
  app.add_flag("--isa", show_isa, "Print the selected kernel instruction set and exit");

  FixtureOptions fixture;
  auto* fx = app.add_subcommand("fixture", "Write a small synthetic corpus");
  fx->add_option("--kind", fixture.kind, "tagging | parsing | ner | summary")->required();
  fx->add_option("--size", fixture.size, "Number of sentences or pairs")->capture_default_str();
  fx->add_option("--seed", fixture.seed, "Generator seed")->capture_default_str();
  fx->add_option("--out", fixture.out, "Output directory")->required();
  fx->add_flag("--json", fixture.json, "Print a JSON summary");

  TrainOptions train;
  auto* tr = app.add_subcommand("train", "Fine-tune adapters and task heads");
  tr->add_option("--config", config_file, "key=value file with option defaults");
  tr->add_option("--task", train.task, "ner | pos | dep")->required();
  tr->add_option("--data", train.data, "Training corpus (CoNLL-U or IOB)")->required();
  tr->add_option("--seed", train.seed, "Seed for init, split and batch order")->capture_default_str();
  tr->add_option("--split", train.split, "Train fraction")->capture_default_str();
  tr->add_option("--steps", train.steps, "Optimizer steps")->capture_default_str();
  tr->add_option("--batch", train.batch, "Sentences per step")->capture_default_str();
  tr->add_option("--lr", train.lr, "Adam learning rate")->capture_default_str();
  tr->add_option("--out", train.out, "Checkpoint path")->required();
  tr->add_flag("--quiet", train.quiet, "Suppress per-step loss lines");
  tr->add_flag("--json", train.json, "Print a JSON run summary instead of log lines");
  add_model_options(*tr, train.model);

  EvalOptions eval;
  auto* ev = app.add_subcommand("eval", "Score a checkpoint on the held-out split");
  ev->add_option("--config", config_file, "key=value file with option defaults");
  ev->add_option("--task", eval.task, "ner | pos | dep")->required();
  ev->add_option("--data", eval.data, "Corpus (CoNLL-U or IOB)")->required();
  add_optional_path(*ev, "--checkpoint", eval.checkpoint, "Checkpoint written by train");
  ev->add_option("--seed", eval.seed, "Split seed")->capture_default_str();
  ev->add_option("--split", eval.split, "Train fraction")->capture_default_str();
  ev->add_flag("--oracle", eval.oracle, "Use gold labels as predictions");
  ev->add_flag("--ensure-single-root", eval.ensure_single_root,
               "Repair predicted trees to exactly one ROOT attachment");
  add_optional_path(*ev, "--out", eval.out, "Write the JSON report here");
  ev->add_flag("--json", eval.json, "Print the JSON report instead of the table");

  SumEvalOptions sum;
  auto* se = app.add_subcommand("sum-eval", "Score summaries by compression and keyword overlap");
  se->add_option("--config", config_file, "key=value file with option defaults");
  se->add_option("--data", sum.data, "JSONL pairs")->required();
  se->add_option("--ratio", sum.ratio, "Baseline length budget")->capture_default_str();
  se->add_option("--k", sum.k, "Keywords per text")->capture_default_str();
  add_optional_path(*se, "--stopwords", sum.stopwords, "Stopword list (one per line)");
  se->add_option("--seed", sum.seed, "Recorded in the report")->capture_default_str();
  add_optional_path(*se, "--out", sum.out, "Write the JSON report here");
  se->add_flag("--json", sum.json, "Print the JSON report instead of the table");

  CompareOptions cmp;
  auto* co = app.add_subcommand("compare", "Paired two-tailed t-test over per-task scores");
  co->add_option("--config", config_file, "key=value file with option defaults");
  co->add_option("--data", cmp.data, "CSV with header task,model_a,model_b")->required();
  co->add_option("--alpha", cmp.alpha, "Significance level")->capture_default_str();
  co->add_option_function<std::size_t>(
      "--df", [&cmp](std::size_t v) { cmp.df = v; }, "Override degrees of freedom");
  add_expect(*co, "t", cmp.expected.t);
  add_expect(*co, "p", cmp.expected.p);
  add_expect(*co, "df", cmp.expected.df);
  add_expect(*co, "critical", cmp.expected.critical);
  add_expect(*co, "mean-a", cmp.expected.mean_a);
  add_expect(*co, "mean-b", cmp.expected.mean_b);
  add_expect(*co, "var-a", cmp.expected.var_a);
  add_expect(*co, "var-b", cmp.expected.var_b);
  add_expect(*co, "n", cmp.expected.n);
  co->add_option("--expect-tol", cmp.expected.tolerance, "Tolerance for --expect-* checks")
      ->capture_default_str();
  co->add_option("--seed", cmp.seed, "Recorded in the report")->capture_default_str();
  add_optional_path(*co, "--out", cmp.out, "Write the JSON report here");
  co->add_flag("--json", cmp.json, "Print the JSON report instead of the table");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  if (show_isa) {
    out << kernels::isa_name(kernels::active().isa) << '\n';
    return kExitOk;
  }
  if (fx->parsed()) return run_fixture(fixture, out, err);
  if (tr->parsed()) return run_train(train, out, err);
  if (ev->parsed()) return run_eval(eval, out, err);
  if (se->parsed()) return run_sum_eval(sum, out, err);
  if (co->parsed()) return run_compare(cmp, out, err);
  out << app.help();
  return kExitInput;
}

}  // namespace loraseq::cli
