#include "pdmargin/pipeline.hpp"

#include <cstring>

#include "pdmargin/error.hpp"
#include "pdmargin/rng.hpp"

namespace pdmargin {

std::vector<double> DiagramClassifier::features(const PersistenceDiagram& pd) const {
  const auto t = truncate_infinite(pd, truncation);
  if (config.method == Method::kBs) {
    return bs_vectorize(t, landmarks, config.weights, config.mode).values;
  }
  auto row = statistical_vector(config.method, t).values;
  if (standardizer) row = standardizer->apply(row);
  return row;
}

Prediction DiagramClassifier::classify(const PersistenceDiagram& pd) const {
  return predict(model, features(pd));
}

FitResult fit_classifier(std::span<const PersistenceDiagram> diagrams, std::span<const int> labels,
                         const PipelineConfig& cfg) {
  if (diagrams.size() != labels.size()) throw InputError("diagram and label counts differ");
  cfg.weights.validate();
  FitResult out;
  auto& clf = out.classifier;
  clf.config = cfg;
  clf.truncation = truncation_constant(diagrams);
  auto truncated = truncate_all(diagrams, clf.truncation);

  LabeledSet set;
  if (cfg.method == Method::kBs) {
    set = labeled_distances(distance_matrix(truncated, cfg.weights, cfg.mode), labels);
    clf.landmarks = std::move(truncated);
  } else {
    set.kind = FeatureKind::kStatFeatures;
    set.labels.assign(labels.begin(), labels.end());
    for (const auto& pd : truncated) {
      set.ids.push_back(pd.id);
      set.rows.push_back(statistical_vector(cfg.method, pd).values);
    }
    if (cfg.standardize) {
      clf.standardizer = Standardizer::fit(set.rows);
      for (auto& row : set.rows) row = clf.standardizer->apply(row);
    }
  }
  clf.model = train(set, cfg.penalty, cfg.tol, cfg.max_iter);
  out.training = std::move(set);
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

std::uint64_t mix(std::uint64_t h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return mix(h, bits);
}

std::uint64_t mix(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) h = mix(h, static_cast<std::uint64_t>(c));
  return mix(h, static_cast<std::uint64_t>(s.size()));
}

}  // namespace

std::uint64_t fingerprint(const DiagramClassifier& c) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  h = mix(h, c.truncation);
  for (const auto& pd : c.landmarks) {
    h = mix(h, pd.id);
    for (const auto& bars : pd.bars) {
      h = mix(h, static_cast<std::uint64_t>(bars.size()));
      for (const auto& b : bars) h = mix(mix(h, b.birth), b.death);
    }
  }
  for (double b : c.model.beta) h = mix(h, b);
  h = mix(h, c.model.bias);
  for (const auto& id : c.model.landmark_ids) h = mix(h, id);
  if (c.standardizer) {
    for (double v : c.standardizer->mean) h = mix(h, v);
    for (double v : c.standardizer->scale) h = mix(h, v);
  }
  return h;
}

}  // namespace pdmargin
