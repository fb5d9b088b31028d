#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdmargin/classify.hpp"
#include "pdmargin/vectorize.hpp"

namespace pdmargin {

struct PipelineConfig {
  Method method = Method::kBs;
  WeightVector weights;
  DistanceMode mode = DistanceMode::kHausdorff;
  double penalty = 1.0;
  double tol = 1e-8;
  int max_iter = 20000;
  bool standardize = false;
};

// A trained diagram classifier. Everything here is derived from the training
// diagrams alone: the truncation constant, the landmarks (bs) and the
// standardizer (stat methods, opt-in).
struct DiagramClassifier {
  PipelineConfig config;
  double truncation = 1.0;
  std::vector<PersistenceDiagram> landmarks;  // truncated training diagrams, bs only
  std::optional<Standardizer> standardizer;
  MarginModel model;

  // Feature row for a raw (untruncated) diagram.
  std::vector<double> features(const PersistenceDiagram& pd) const;
  Prediction classify(const PersistenceDiagram& pd) const;
};

struct FitResult {
  DiagramClassifier classifier;
  LabeledSet training;  // the rows the model was trained on
};

// Hash of every training-time artifact (truncation, landmarks, model).
std::uint64_t fingerprint(const DiagramClassifier& c);

FitResult fit_classifier(std::span<const PersistenceDiagram> diagrams, std::span<const int> labels,
                         const PipelineConfig& cfg);

}  // namespace pdmargin
