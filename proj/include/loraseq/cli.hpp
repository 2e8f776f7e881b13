// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "loraseq/encoder.hpp"
#include "loraseq/stats.hpp"

namespace loraseq::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitEval = 1,   // evaluation failure, degenerate statistics
  kExitInput = 2,  // unreadable/invalid input, bad configuration
};

constexpr int kReportSchemaVersion = 1;

enum class TaskKind { ner, pos, dep, sum };

std::optional<TaskKind> parse_task(std::string_view name);
std::string_view task_name(TaskKind task);

struct ModelOptions {
  std::size_t d_model = 64;
  std::size_t n_heads = 4;
  std::size_t n_layers = 2;
  std::size_t max_len = 64;
  std::size_t d_ff = 128;
  std::size_t d_arc = 32;
  std::size_t rank = 4;
  double alpha = 8.0;
  std::string adapt = "query,value";
};

struct FixtureOptions {
  std::string kind;
  std::size_t size = 100;
  std::uint64_t seed = 1;
  std::filesystem::path out;
  bool json = false;
};

struct TrainOptions {
  std::string task;
  std::filesystem::path data;
  std::uint64_t seed = 1;
  double split = 0.8;
  ModelOptions model;
  std::size_t steps = 500;
  std::size_t batch = 8;
  double lr = 1e-3;
  std::filesystem::path out;
  bool quiet = false;  // suppress per-step loss lines
  bool json = false;   // print a JSON run summary instead of log lines
};

struct EvalOptions {
  std::string task;
  std::filesystem::path data;
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t seed = 1;
  double split = 0.8;
  bool oracle = false;
  bool ensure_single_root = false;
  std::optional<std::filesystem::path> out;
  bool json = false;
};

struct SumEvalOptions {
  std::filesystem::path data;
  double ratio = 0.3;
  std::size_t k = 10;
  std::optional<std::filesystem::path> stopwords;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> out;
  bool json = false;
};

struct CompareOptions {
  std::filesystem::path data;
  double alpha = 0.05;
  std::optional<std::size_t> df;
  stats::ExpectedValues expected;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> out;
  bool json = false;
};

struct TrainResult {
  std::vector<double> losses;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

int run_fixture(const FixtureOptions& opts, std::ostream& out, std::ostream& err);
int run_train(const TrainOptions& opts, std::ostream& out, std::ostream& err,
              TrainResult* result = nullptr);
int run_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err,
             nlohmann::ordered_json* report = nullptr);
int run_sum_eval(const SumEvalOptions& opts, std::ostream& out, std::ostream& err,
                 nlohmann::ordered_json* report = nullptr);
int run_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err,
                nlohmann::ordered_json* report = nullptr);

/// Parses argv (CLI11), dispatches to a subcommand and returns its exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e) noexcept;

/// Copy of a report without its "timestamp" field.
nlohmann::ordered_json without_timestamp(nlohmann::ordered_json report);

}  // namespace loraseq::cli
