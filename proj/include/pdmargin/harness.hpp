#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdmargin/pipeline.hpp"

namespace pdmargin {

struct Dataset {
  std::vector<PersistenceDiagram> diagrams;
  std::vector<int> labels;  // -1 / +1, parallel to diagrams
};

struct Split {
  std::vector<std::size_t> train;  // ascending indices
  std::vector<std::size_t> test;
};

// |train| = round(fraction * n). Stratified splits keep each class within one
// sample of its proportional share. Throws SplitError when a class would be
// missing from train or test.
Split split(std::span<const int> labels, double fraction, std::uint64_t seed,
            bool stratified = true);

struct EvalConfig {
  std::vector<Method> methods{Method::kBs};
  std::vector<double> train_fractions{0.3, 0.5, 0.8};
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  double penalty = 1.0;
  WeightVector weights;
  DistanceMode mode = DistanceMode::kHausdorff;
  bool stratified = true;
  bool standardize = false;
  double tol = 1e-8;
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Split seed for a (fraction, repeat) cell; shared by all methods.
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t fraction_index, std::size_t repeat);

enum class ErrorType { kTypeI, kTypeII };
std::string_view to_string(ErrorType t);

struct ScoredItem {
  std::string id;
  int true_label = 0;
  int predicted = 0;
  double score = 0.0;
};

struct RepeatResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t correct = 0;
  std::optional<double> accuracy;  // empty when training failed
  double truncation = 0.0;
  std::vector<ScoredItem> predictions;  // every test item
  std::uint64_t training_fingerprint = 0;
  std::optional<std::string> error;
};

struct CellResult {
  Method method = Method::kBs;
  double fraction = 0.0;
  std::vector<RepeatResult> repeats;
  std::optional<double> mean_accuracy;  // over repeats that trained
};

struct EvalReport {
  EvalConfig config;
  std::vector<CellResult> cells;  // methods outer, fractions inner
  double wall_seconds = 0.0;
};

// Needs at least 4 samples per class.
EvalReport evaluate(const Dataset& data, const EvalConfig& cfg);

// Runs one train/test repeat.
RepeatResult run_repeat(const Dataset& data, const Split& s, const PipelineConfig& cfg);

struct MisclassEntry {
  std::string id;
  int true_label = 0;
  int predicted = 0;
  double score = 0.0;
  ErrorType type = ErrorType::kTypeI;
};

// TypeII iff |score| < 1 (inside the margin band), TypeI otherwise.
std::vector<MisclassEntry> misclass_report(const RepeatResult& run);

struct CandidateScore {
  std::string id;
  double score = 0.0;
  int predicted = 0;
  bool in_band = false;  // TypeII-band function candidate
};

struct FunctionReport {
  DiagramClassifier classifier;
  std::vector<CandidateScore> ranking;  // |score| ascending, ties by id
};

// Trains on the known set (+1 = carries the function) and ranks candidates.
FunctionReport predict_function(const Dataset& known,
                                std::span<const PersistenceDiagram> candidates,
                                const PipelineConfig& cfg);

// Deterministic JSON (no timing data).
std::string eval_report_json(const EvalReport& report);
// Plain-text accuracy table: one row per method, one column per fraction.
std::string render_table(const EvalReport& report);

}  // namespace pdmargin
