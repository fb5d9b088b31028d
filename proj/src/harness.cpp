#include "pdmargin/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "pdmargin/error.hpp"
#include "pdmargin/parallel.hpp"
#include "pdmargin/rng.hpp"

namespace pdmargin {

namespace {

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace

Split split(std::span<const int> labels, double fraction, std::uint64_t seed, bool stratified) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw SplitError("train fraction must lie in (0, 1)");
  const std::size_t n = labels.size();
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 1 && labels[i] != -1) throw SplitError("labels must be +-1");
    by_class[labels[i] > 0 ? 1 : 0].push_back(i);
  }
  const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  Rng rng(seed);
  Split s;

  if (stratified) {
    std::size_t take[2];
    double remainder[2];
    for (int c = 0; c < 2; ++c) {
      const double share = fraction * static_cast<double>(by_class[c].size());
      take[c] = static_cast<std::size_t>(std::floor(share));
      remainder[c] = share - std::floor(share);
    }
    // Largest remainder first; class -1 wins ties.
    std::size_t missing = n_train - std::min(n_train, take[0] + take[1]);
    const int order[2] = {remainder[1] > remainder[0] ? 1 : 0, remainder[1] > remainder[0] ? 0 : 1};
    for (int c : order) {
      if (missing > 0 && take[c] < by_class[c].size()) {
        ++take[c];
        --missing;
      }
    }
    for (int c = 0; c < 2; ++c) {
      auto idx = by_class[c];
      shuffle(idx, rng);
      s.train.insert(s.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take[c]));
      s.test.insert(s.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(take[c]), idx.end());
    }
  } else {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, rng);
    s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());

  for (int y : {-1, 1}) {
    auto has = [&](const std::vector<std::size_t>& part) {
      return std::any_of(part.begin(), part.end(), [&](std::size_t i) { return labels[i] == y; });
    };
    if (!has(s.train) || !has(s.test)) {
      throw SplitError("class " + std::to_string(y) + " is missing from the " +
                       (has(s.train) ? "test" : "train") + " split at fraction " +
                       std::to_string(fraction));
    }
  }
  return s;
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t fraction_index, std::size_t repeat) {
  return derive_seed(seed, {fraction_index, repeat});
}

std::string_view to_string(ErrorType t) { return t == ErrorType::kTypeI ? "TypeI" : "TypeII"; }

RepeatResult run_repeat(const Dataset& data, const Split& s, const PipelineConfig& cfg) {
  RepeatResult r;
  r.n_train = s.train.size();
  r.n_test = s.test.size();
  std::vector<PersistenceDiagram> train_pd;
  std::vector<int> train_y;
  for (auto i : s.train) {
    train_pd.push_back(data.diagrams[i]);
    train_y.push_back(data.labels[i]);
  }
  try {
    const auto fit = fit_classifier(train_pd, train_y, cfg);
    r.truncation = fit.classifier.truncation;
    r.training_fingerprint = fingerprint(fit.classifier);
    for (auto i : s.test) {
      const auto p = fit.classifier.classify(data.diagrams[i]);
      r.predictions.push_back({data.diagrams[i].id, data.labels[i], p.label, p.score});
      if (p.label == data.labels[i]) ++r.correct;
    }
    r.accuracy = r.n_test == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.n_test);
  } catch (const Error& e) {
    r.error = e.what();
    r.predictions.clear();
    r.correct = 0;
  }
  return r;
}

EvalReport evaluate(const Dataset& data, const EvalConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (data.diagrams.size() != data.labels.size()) throw InputError("diagram and label counts differ");
  if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (cfg.methods.empty() || cfg.train_fractions.empty()) throw ConfigError("nothing to evaluate");
  cfg.weights.validate();
  std::size_t per_class[2] = {0, 0};
  for (int y : data.labels) {
    if (y != 1 && y != -1) throw InputError("labels must be +-1");
    ++per_class[y > 0 ? 1 : 0];
  }
  if (per_class[0] < 4 || per_class[1] < 4) throw InputError("evaluation needs >= 4 samples per class");

  const std::size_t nf = cfg.train_fractions.size();
  std::vector<Split> splits(nf * cfg.repeats);
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      splits[f * cfg.repeats + r] =
          split(data.labels, cfg.train_fractions[f], repeat_seed(cfg.seed, f, r), cfg.stratified);
    }
  }

  EvalReport report;
  report.config = cfg;
  for (auto m : cfg.methods) {
    for (std::size_t f = 0; f < nf; ++f) {
      CellResult cell;
      cell.method = m;
      cell.fraction = cfg.train_fractions[f];
      cell.repeats.resize(cfg.repeats);
      report.cells.push_back(std::move(cell));
    }
  }

  const std::size_t jobs = report.cells.size() * cfg.repeats;
  parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t c = job / cfg.repeats;
    const std::size_t r = job % cfg.repeats;
    const std::size_t f = c % nf;
    PipelineConfig pc;
    pc.method = report.cells[c].method;
    pc.weights = cfg.weights;
    pc.mode = cfg.mode;
    pc.penalty = cfg.penalty;
    pc.tol = cfg.tol;
    pc.standardize = cfg.standardize;
    auto result = run_repeat(data, splits[f * cfg.repeats + r], pc);
    result.index = r;
    result.seed = repeat_seed(cfg.seed, f, r);
    report.cells[c].repeats[r] = std::move(result);
  });

  for (auto& cell : report.cells) {
    double sum = 0.0;
    std::size_t ok = 0;
    for (const auto& r : cell.repeats) {
      if (r.accuracy) {
        sum += *r.accuracy;
        ++ok;
      }
    }
    if (ok > 0) cell.mean_accuracy = sum / static_cast<double>(ok);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<MisclassEntry> misclass_report(const RepeatResult& run) {
  std::vector<MisclassEntry> out;
  for (const auto& p : run.predictions) {
    if (p.predicted == p.true_label) continue;
    out.push_back({p.id, p.true_label, p.predicted, p.score,
                   std::abs(p.score) < 1.0 ? ErrorType::kTypeII : ErrorType::kTypeI});
  }
  return out;
}

FunctionReport predict_function(const Dataset& known, std::span<const PersistenceDiagram> candidates,
                                const PipelineConfig& cfg) {
  FunctionReport report;
  report.classifier = fit_classifier(known.diagrams, known.labels, cfg).classifier;
  for (const auto& pd : candidates) {
    const auto p = report.classifier.classify(pd);
    report.ranking.push_back({pd.id, p.score, p.label, std::abs(p.score) < 1.0});
  }
  std::sort(report.ranking.begin(), report.ranking.end(),
            [](const CandidateScore& a, const CandidateScore& b) {
              const double ka = std::abs(a.score), kb = std::abs(b.score);
              return ka != kb ? ka < kb : a.id < b.id;
            });
  return report;
}

std::string eval_report_json(const EvalReport& report) {
  using nlohmann::json;
  const auto& cfg = report.config;
  json config;
  config["methods"] = json::array();
  for (auto m : cfg.methods) config["methods"].push_back(std::string(to_string(m)));
  config["train_fractions"] = cfg.train_fractions;
  config["repeats"] = cfg.repeats;
  config["seed"] = cfg.seed;
  config["penalty"] = cfg.penalty;
  config["weights"] = cfg.weights.w;
  config["distance_mode"] = std::string(to_string(cfg.mode));
  config["stratified"] = cfg.stratified;
  config["standardize"] = cfg.standardize;
  config["tol"] = cfg.tol;

  json cells = json::array();
  for (const auto& cell : report.cells) {
    json jc;
    jc["method"] = std::string(to_string(cell.method));
    jc["fraction"] = cell.fraction;
    jc["mean_accuracy"] = cell.mean_accuracy ? json(*cell.mean_accuracy) : json(nullptr);
    json accs = json::array();
    json repeats = json::array();
    for (const auto& r : cell.repeats) {
      accs.push_back(r.accuracy ? json(*r.accuracy) : json(nullptr));
      json jr;
      jr["index"] = r.index;
      jr["seed"] = r.seed;
      jr["n_train"] = r.n_train;
      jr["n_test"] = r.n_test;
      jr["correct"] = r.correct;
      jr["accuracy"] = r.accuracy ? json(*r.accuracy) : json(nullptr);
      jr["truncation"] = r.truncation;
      jr["error"] = r.error ? json(*r.error) : json(nullptr);
      json mis = json::array();
      for (const auto& e : misclass_report(r)) {
        mis.push_back({{"id", e.id},
                       {"true", e.true_label},
                       {"predicted", e.predicted},
                       {"score", e.score},
                       {"error_type", std::string(to_string(e.type))}});
      }
      jr["misclassified"] = std::move(mis);
      repeats.push_back(std::move(jr));
    }
    jc["accuracies"] = std::move(accs);
    jc["repeats"] = std::move(repeats);
    cells.push_back(std::move(jc));
  }
  json out;
  out["config"] = std::move(config);
  out["cells"] = std::move(cells);
  return out.dump(2) + "\n";
}

std::string render_table(const EvalReport& report) {
  const auto& fractions = report.config.train_fractions;
  std::ostringstream out;
  constexpr int kFirst = 12;
  constexpr int kCol = 11;
  out << std::left << std::setw(kFirst) << "Method";
  for (double f : fractions) {
    std::ostringstream h;
    h << std::setprecision(3) << f * 100.0 << "%";
    out << std::right << std::setw(kCol) << h.str();
  }
  out << '\n';
  for (auto m : report.config.methods) {
    out << std::left << std::setw(kFirst) << to_string(m);
    for (double f : fractions) {
      const auto it = std::find_if(report.cells.begin(), report.cells.end(), [&](const CellResult& c) {
        return c.method == m && c.fraction == f;
      });
      std::ostringstream v;
      if (it != report.cells.end() && it->mean_accuracy) {
        v << std::fixed << std::setprecision(2) << *it->mean_accuracy * 100.0 << "%";
      } else {
        v << "n/a";
      }
      out << std::right << std::setw(kCol) << v.str();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pdmargin
