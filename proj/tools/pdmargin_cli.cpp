#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdmargin/embed.hpp"
#include "pdmargin/error.hpp"
#include "pdmargin/harness.hpp"
#include "pdmargin/ingest.hpp"
#include "pdmargin/io.hpp"
#include "pdmargin/persistence.hpp"
#include "pdmargin/synth.hpp"

namespace fs = std::filesystem;
using namespace pdmargin;
using io::json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string weights = "1/3";
  std::string mode = "hausdorff";
  double penalty = 1.0;
  double cutoff = 0.01;
  std::vector<double> fractions{0.3, 0.5, 0.8};
  std::size_t repeats = 5;
  std::vector<std::string> methods{"bs"};
  std::string out = ".";
  std::size_t threads = 0;
  double tol = 1e-8;
  bool standardize = false;
  bool unstratified = false;
};

WeightVector weights_of(const Common& c) {
  if (c.weights == "1/3") return WeightVector{};
  return parse_weights(c.weights);
}

PipelineConfig pipeline_of(const Common& c, Method m) {
  PipelineConfig p;
  p.method = m;
  p.weights = weights_of(c);
  p.mode = parse_distance_mode(c.mode);
  p.penalty = c.penalty;
  p.tol = c.tol;
  p.standardize = c.standardize;
  return p;
}

bool is_cloud_file(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".xyz" || ext == ".pdb" || ext == ".ent" || ext == ".PDB";
}

// Expands directories into their point-cloud files, sorted by name.
std::vector<fs::path> cloud_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && is_cloud_file(e.path())) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.emplace_back(in);
    }
  }
  if (out.empty()) throw InputError("no input point clouds");
  return out;
}

std::vector<PersistenceDiagram> diagrams_in(const std::string& dir) {
  auto pds = io::read_diagram_dir(dir);
  if (pds.empty()) throw InputError("no diagram files in " + dir);
  return pds;
}

Dataset labelled(const std::string& dir, const std::string& labels) {
  return io::join_labels(diagrams_in(dir), io::read_labels(labels));
}

std::vector<Method> methods_of(const Common& c) {
  std::vector<Method> out;
  for (const auto& m : c.methods) out.push_back(parse_method(m));
  return out;
}

void add_seed(CLI::App* app, Common& c) { app->add_option("--seed", c.seed, "Random seed"); }

void add_model_flags(CLI::App* app, Common& c) {
  app->add_option("--method", c.methods, "Vectorization: bs, stat1, stat2, stat3")
      ->delimiter(',');
  app->add_option("--weights", c.weights, "Per-dimension weights w0,w1,w2 (default 1/3 each)");
  app->add_option("--distance-mode", c.mode, "hausdorff or max-pairwise")
      ->check(CLI::IsMember({"hausdorff", "max-pairwise"}));
  app->add_option("--penalty", c.penalty, "Slack penalty a")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--standardize", c.standardize, "Standardize statistical features");
}

Method single_method(const Common& c) {
  const auto ms = methods_of(c);
  if (ms.size() != 1) throw ConfigError("exactly one --method is required here");
  return ms.front();
}

void write_json(const fs::path& p, const json& j) { io::write_text(p, j.dump(2) + "\n"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protein shape classification from persistence diagrams"};
  app.require_subcommand(1);
  Common c;

  // ingest
  std::vector<std::string> inputs;
  double threshold = 5.0;
  auto* ingest = app.add_subcommand("ingest", "Extract C-alpha clouds and contact graphs");
  ingest->add_option("inputs", inputs, "PDB/xyz files or directories")->required();
  ingest->add_option("--threshold", threshold, "Contact distance threshold")->check(CLI::PositiveNumber);
  ingest->add_option("--out", c.out, "Output directory");

  // embed
  EmbeddingConfig ecfg;
  std::string embedding = "random-walk";
  auto* embed = app.add_subcommand("embed", "Embed contact graphs into point clouds");
  embed->add_option("inputs", inputs, "PDB/xyz files or directories")->required();
  embed->add_option("--threshold", threshold, "Contact distance threshold")->check(CLI::PositiveNumber);
  embed->add_option("--embedding", embedding, "random-walk or spectral")
      ->check(CLI::IsMember({"random-walk", "spectral"}));
  embed->add_option("--dim", ecfg.dim, "Embedding dimension");
  embed->add_option("--walks", ecfg.walks_per_node, "Walks per node");
  embed->add_option("--walk-length", ecfg.walk_length, "Walk length");
  embed->add_option("--p", ecfg.return_param, "Return parameter");
  embed->add_option("--q", ecfg.inout_param, "In-out parameter");
  embed->add_option("--window", ecfg.window, "Skip-gram window");
  embed->add_option("--negatives", ecfg.negatives, "Negative samples");
  embed->add_option("--epochs", ecfg.epochs, "Training epochs");
  embed->add_option("--out", c.out, "Output directory");
  add_seed(embed, c);

  // ph
  PersistenceOptions popts;
  auto* ph = app.add_subcommand("ph", "Persistence diagrams of point clouds");
  ph->add_option("inputs", inputs, "PDB/xyz files or directories")->required();
  ph->add_option("--cutoff", c.cutoff, "Noise cutoff on persistence");
  ph->add_option("--max-radius", popts.max_radius, "Largest Rips diameter");
  ph->add_option("--max-dim", popts.max_homology_dim, "Highest homology dimension")
      ->check(CLI::Range(0, 2));
  ph->add_option("--budget", popts.budget, "Simplex budget");
  ph->add_option("--out", c.out, "Output directory");

  // vectorize
  std::string diagrams_dir, landmarks_dir;
  auto* vec = app.add_subcommand("vectorize", "Feature vectors of diagrams");
  vec->add_option("--diagrams", diagrams_dir, "Directory of diagram JSON files")->required();
  vec->add_option("--landmarks", landmarks_dir, "Landmark diagrams (bs; default: the input set)");
  add_model_flags(vec, c);
  vec->add_option("--out", c.out, "Output directory");

  // train
  std::string labels_file;
  auto* trn = app.add_subcommand("train", "Train a margin classifier");
  trn->add_option("--diagrams", diagrams_dir, "Directory of diagram JSON files")->required();
  trn->add_option("--labels", labels_file, "id,label CSV")->required();
  add_model_flags(trn, c);
  trn->add_option("--out", c.out, "Output directory");

  // predict
  std::string model_file;
  auto* prd = app.add_subcommand("predict", "Score diagrams with a trained model");
  prd->add_option("--model", model_file, "model.json from train")->required();
  prd->add_option("--diagrams", diagrams_dir, "Directory of diagram JSON files")->required();
  prd->add_option("--out", c.out, "Output directory");

  // eval
  auto* evl = app.add_subcommand("eval", "Repeated random-split evaluation");
  evl->add_option("--diagrams", diagrams_dir, "Directory of diagram JSON files")->required();
  evl->add_option("--labels", labels_file, "id,label CSV")->required();
  add_model_flags(evl, c);
  evl->add_option("--train-fractions", c.fractions, "Comma-separated train fractions")->delimiter(',');
  evl->add_option("--repeats", c.repeats, "Repeats per fraction")->check(CLI::PositiveNumber);
  evl->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  evl->add_flag("--unstratified", c.unstratified, "Plain random splits");
  evl->add_option("--out", c.out, "Output directory");
  add_seed(evl, c);

  // predict-function
  std::string candidates_dir;
  auto* pf = app.add_subcommand("predict-function", "Rank candidates for a known function");
  pf->add_option("--diagrams", diagrams_dir, "Known diagrams")->required();
  pf->add_option("--labels", labels_file, "id,label CSV (+1 carries the function)")->required();
  pf->add_option("--candidates", candidates_dir, "Candidate diagrams")->required();
  add_model_flags(pf, c);
  pf->add_option("--out", c.out, "Output directory");

  // synth
  SynthConfig scfg;
  bool with_diagrams = false;
  auto* syn = app.add_subcommand("synth", "Noisy circles versus two-blob clouds");
  syn->add_option("--circles", scfg.n_circles, "Number of circle clouds");
  syn->add_option("--blobs", scfg.n_blobs, "Number of two-blob clouds");
  syn->add_option("--points", scfg.points_per_cloud, "Points per cloud");
  syn->add_option("--circle-noise", scfg.circle_noise, "Circle noise sd");
  syn->add_option("--blob-sd", scfg.blob_sd, "Blob sd");
  syn->add_option("--separation", scfg.blob_separation, "Distance between blob centers");
  syn->add_option("--seed", scfg.seed, "Generator seed");
  syn->add_flag("--diagrams", with_diagrams, "Also write persistence diagrams");
  syn->add_option("--cutoff", c.cutoff, "Noise cutoff for --diagrams");
  syn->add_option("--out", c.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out = c.out;

    if (*ingest) {
      json summary = json::array();
      for (const auto& path : cloud_inputs(inputs)) {
        const auto pc = load_point_cloud(path);
        const auto g = contact_graph(pc, threshold);
        io::write_text(out / (pc.id + ".xyz"), format_xyz(pc));
        json edges = json::array();
        for (const auto& [i, j] : g.edges) edges.push_back({i, j});
        write_json(out / (pc.id + ".graph.json"),
                   {{"id", pc.id}, {"n_nodes", g.n_nodes}, {"threshold", g.threshold}, {"edges", edges}});
        summary.push_back({{"id", pc.id}, {"residues", pc.size()}, {"edges", g.edges.size()}});
      }
      std::cout << summary.dump(2) << "\n";
    } else if (*embed) {
      ecfg.seed = c.seed;
      ecfg.method = embedding == "spectral" ? EmbeddingMethod::kSpectral : EmbeddingMethod::kRandomWalk;
      ecfg.validate();
      for (const auto& path : cloud_inputs(inputs)) {
        const auto pc = load_point_cloud(path);
        auto e = embed_graph(contact_graph(pc, threshold), ecfg);
        e.id = pc.id;
        io::write_text(out / (pc.id + ".xyz"), format_xyz(e));
      }
    } else if (*ph) {
      popts.cutoff = c.cutoff;
      for (const auto& path : cloud_inputs(inputs)) {
        const auto pd = diagram_of(load_point_cloud(path), popts);
        io::write_diagram(out / (pd.id + ".json"), pd);
      }
    } else if (*vec) {
      const Method m = single_method(c);
      auto pds = diagrams_in(diagrams_dir);
      std::vector<std::string> ids;
      for (const auto& pd : pds) ids.push_back(pd.id);
      std::vector<std::vector<double>> rows;
      if (m == Method::kBs) {
        const auto marks_raw = landmarks_dir.empty() ? pds : diagrams_in(landmarks_dir);
        const double t = truncation_constant(marks_raw);
        const auto marks = truncate_all(marks_raw, t);
        for (const auto& pd : pds) {
          rows.push_back(
              bs_vectorize(truncate_infinite(pd, t), marks, weights_of(c), parse_distance_mode(c.mode)).values);
        }
        if (landmarks_dir.empty()) {
          const auto dm = distance_matrix(marks, weights_of(c), parse_distance_mode(c.mode));
          io::write_text(out / "distances.csv", distance_matrix_csv(dm));
        }
        write_json(out / "vectorize.json", {{"method", "bs"}, {"truncation", t}});
      } else {
        const double t = truncation_constant(pds);
        for (const auto& pd : pds) rows.push_back(statistical_vector(m, truncate_infinite(pd, t)).values);
        write_json(out / "vectorize.json", {{"method", std::string(to_string(m))}, {"truncation", t}});
      }
      io::write_text(out / "features.csv", io::features_csv(ids, rows));
    } else if (*trn) {
      const auto data = labelled(diagrams_dir, labels_file);
      const auto fit = fit_classifier(data.diagrams, data.labels, pipeline_of(c, single_method(c)));
      write_json(out / "model.json", io::model_to_json(fit.classifier));
      std::cout << io::qp_report_to_json(fit.classifier.model.solver_report).dump(2) << "\n";
    } else if (*prd) {
      const auto clf = io::model_from_json(json::parse(io::read_text(model_file)));
      std::vector<ScoredItem> items;
      for (const auto& pd : diagrams_in(diagrams_dir)) {
        const auto p = clf.classify(pd);
        items.push_back({pd.id, 0, p.label, p.score});
      }
      io::write_text(out / "predictions.csv", io::predictions_csv(items));
    } else if (*evl) {
      EvalConfig cfg;
      cfg.methods = methods_of(c);
      cfg.train_fractions = c.fractions;
      cfg.repeats = c.repeats;
      cfg.seed = c.seed;
      cfg.penalty = c.penalty;
      cfg.weights = weights_of(c);
      cfg.mode = parse_distance_mode(c.mode);
      cfg.stratified = !c.unstratified;
      cfg.standardize = c.standardize;
      cfg.tol = c.tol;
      cfg.threads = c.threads;
      const auto report = evaluate(labelled(diagrams_dir, labels_file), cfg);
      io::write_text(out / "report.json", eval_report_json(report));
      const auto table = render_table(report);
      io::write_text(out / "table.txt", table);
      write_json(out / "eval_timing.json", {{"wall_seconds", report.wall_seconds}});
      std::cout << table;
    } else if (*pf) {
      const auto known = labelled(diagrams_dir, labels_file);
      const auto cands = io::read_diagram_dir(candidates_dir);
      const auto rep = predict_function(known, cands, pipeline_of(c, single_method(c)));
      json ranking = json::array();
      for (const auto& r : rep.ranking) {
        ranking.push_back({{"id", r.id}, {"score", r.score}, {"predicted", r.predicted}, {"in_band", r.in_band}});
      }
      write_json(out / "ranking.json", ranking);
      write_json(out / "model.json", io::model_to_json(rep.classifier));
      std::vector<std::string> ids;
      std::vector<std::vector<double>> rows;
      for (const auto& pd : cands) {
        ids.push_back(pd.id);
        rows.push_back(rep.classifier.features(pd));
      }
      io::write_text(out / "candidate_features.csv", io::features_csv(ids, rows));
    } else if (*syn) {
      const auto clouds = synth_circles_vs_blobs(scfg);
      std::vector<std::pair<std::string, int>> labels;
      PersistenceOptions opts;
      opts.cutoff = c.cutoff;
      for (const auto& pc : clouds) {
        io::write_text(out / "clouds" / (pc.id + ".xyz"), format_xyz(pc));
        labels.emplace_back(pc.id, *pc.label);
        if (with_diagrams) io::write_diagram(out / "diagrams" / (pc.id + ".json"), diagram_of(pc, opts));
      }
      io::write_text(out / "labels.csv", io::labels_csv(labels));
      write_json(out / "synth.json", {{"seed", scfg.seed},
                                      {"circles", scfg.n_circles},
                                      {"blobs", scfg.n_blobs},
                                      {"points", scfg.points_per_cloud},
                                      {"circle_noise", scfg.circle_noise},
                                      {"blob_sd", scfg.blob_sd},
                                      {"separation", scfg.blob_separation}});
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
