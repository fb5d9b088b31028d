#include "pdmargin/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pdmargin/error.hpp"

namespace pdmargin::io {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json diagram_to_json(const PersistenceDiagram& pd) {
  json dims = json::object();
  for (std::size_t k = 0; k < pd.bars.size(); ++k) {
    json arr = json::array();
    for (const auto& b : pd.bars[k]) {
      arr.push_back(json::array({b.birth, b.infinite() ? json("inf") : json(b.death)}));
    }
    dims[std::to_string(k)] = std::move(arr);
  }
  return {{"id", pd.id}, {"dims", std::move(dims)}};
}

namespace {

double bar_value(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
  throw InputError("bad bar value in " + where);
}

}  // namespace

PersistenceDiagram diagram_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims")) throw InputError("diagram JSON needs a 'dims' object");
  PersistenceDiagram pd;
  pd.id = j.value("id", std::string{});
  for (const auto& [key, arr] : j.at("dims").items()) {
    std::size_t k;
    try {
      k = std::stoul(key);
    } catch (const std::exception&) {
      throw InputError("bad homology dimension '" + key + "' in diagram " + pd.id);
    }
    if (k > kMaxHomologyDim) throw InputError("homology dimension " + key + " is out of range");
    for (const auto& pair : arr) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("bars must be [birth, death] pairs");
      const Bar b{bar_value(pair[0], pd.id), bar_value(pair[1], pd.id)};
      if (!std::isfinite(b.birth) || b.death < b.birth) throw InputError("invalid bar in " + pd.id);
      pd.bars[k].push_back(b);
    }
  }
  pd.canonicalize();
  return pd;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

PersistenceDiagram read_diagram(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  auto pd = diagram_from_json(j);
  if (pd.id.empty()) pd.id = path.stem().string();
  return pd;
}

void write_diagram(const std::filesystem::path& path, const PersistenceDiagram& pd) {
  write_text(path, diagram_to_json(pd).dump(1) + "\n");
}

std::vector<PersistenceDiagram> read_diagram_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<PersistenceDiagram> out;
  for (const auto& f : files) out.push_back(read_diagram(f));
  return out;
}

std::vector<std::pair<std::string, int>> read_labels(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<std::pair<std::string, int>> out;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'id,label'", line_no);
    const auto id = line.substr(0, comma);
    const auto label = line.substr(comma + 1);
    if (line_no == 1 && id == "id") continue;
    if (label == "1" || label == "+1") {
      out.emplace_back(id, 1);
    } else if (label == "-1") {
      out.emplace_back(id, -1);
    } else {
      throw ParseError("label must be -1 or +1, got '" + label + "'", line_no);
    }
  }
  return out;
}

std::string labels_csv(const std::vector<std::pair<std::string, int>>& labels) {
  std::string out = "id,label\n";
  for (const auto& [id, y] : labels) out += id + (y > 0 ? ",1\n" : ",-1\n");
  return out;
}

Dataset join_labels(std::vector<PersistenceDiagram> diagrams,
                    const std::vector<std::pair<std::string, int>>& labels) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < diagrams.size(); ++i) index[diagrams[i].id] = i;
  Dataset out;
  for (const auto& [id, y] : labels) {
    const auto it = index.find(id);
    if (it == index.end()) throw InputError("no diagram for labelled id '" + id + "'");
    out.diagrams.push_back(std::move(diagrams[it->second]));
    out.labels.push_back(y);
  }
  return out;
}

std::string features_csv(const std::vector<std::string>& ids,
                         const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out << "id";
  const std::size_t m = rows.empty() ? 0 : rows.front().size();
  for (std::size_t k = 0; k < m; ++k) out << ",f" << k;
  out << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << ids[i];
    for (double v : rows[i]) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

json matrix_to_json(const DistanceMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"ids", m.ids}, {"values", std::move(rows)}};
}

json qp_report_to_json(const QpReport& r) {
  return {{"iterations", r.iterations},
          {"primal_residual", r.primal_residual},
          {"stationarity_residual", r.stationarity_residual},
          {"complementarity_residual", r.complementarity_residual},
          {"objective", r.objective},
          {"regularization", r.regularization},
          {"converged", r.converged}};
}

json model_to_json(const DiagramClassifier& c) {
  const auto& m = c.model;
  json j;
  j["beta"] = m.beta;
  j["c"] = m.bias;
  j["xi"] = m.slack;
  j["a"] = m.penalty;
  j["tol"] = m.tol;
  j["feature_kind"] = std::string(to_string(m.kind));
  j["landmark_ids"] = m.landmark_ids;
  j["solver_report"] = qp_report_to_json(m.solver_report);
  j["method"] = std::string(to_string(c.config.method));
  j["weights"] = c.config.weights.w;
  j["distance_mode"] = std::string(to_string(c.config.mode));
  j["truncation"] = c.truncation;
  j["standardize"] = c.standardizer.has_value();
  if (c.standardizer) {
    j["standardizer"] = {{"mean", c.standardizer->mean}, {"scale", c.standardizer->scale}};
  }
  json landmarks = json::array();
  for (const auto& pd : c.landmarks) landmarks.push_back(diagram_to_json(pd));
  j["landmarks"] = std::move(landmarks);
  return j;
}

DiagramClassifier model_from_json(const json& j) {
  try {
    DiagramClassifier c;
    auto& m = c.model;
    m.beta = j.at("beta").get<std::vector<double>>();
    m.bias = j.at("c").get<double>();
    m.slack = j.value("xi", std::vector<double>{});
    m.penalty = j.at("a").get<double>();
    m.tol = j.at("tol").get<double>();
    m.kind = parse_feature_kind(j.at("feature_kind").get<std::string>());
    m.landmark_ids = j.at("landmark_ids").get<std::vector<std::string>>();
    const auto& rep = j.at("solver_report");
    m.solver_report.iterations = rep.value("iterations", 0);
    m.solver_report.primal_residual = rep.value("primal_residual", 0.0);
    m.solver_report.stationarity_residual = rep.value("stationarity_residual", 0.0);
    m.solver_report.complementarity_residual = rep.value("complementarity_residual", 0.0);
    m.solver_report.objective = rep.value("objective", 0.0);
    m.solver_report.regularization = rep.value("regularization", 0.0);
    m.solver_report.converged = rep.value("converged", false);
    c.config.method = parse_method(j.at("method").get<std::string>());
    c.config.weights.w = j.at("weights").get<std::array<double, 3>>();
    c.config.mode = parse_distance_mode(j.at("distance_mode").get<std::string>());
    c.config.penalty = m.penalty;
    c.config.tol = m.tol;
    c.truncation = j.at("truncation").get<double>();
    if (j.contains("standardizer")) {
      Standardizer s;
      s.mean = j["standardizer"].at("mean").get<std::vector<double>>();
      s.scale = j["standardizer"].at("scale").get<std::vector<double>>();
      c.standardizer = std::move(s);
      c.config.standardize = true;
    }
    for (const auto& pd : j.value("landmarks", json::array())) {
      c.landmarks.push_back(diagram_from_json(pd));
    }
    if (c.config.method == Method::kBs && c.landmarks.size() != m.beta.size()) {
      throw InputError("bs model needs one landmark diagram per coefficient");
    }
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

std::string predictions_csv(const std::vector<ScoredItem>& items) {
  std::string out = "id,score,label\n";
  for (const auto& it : items) {
    out += it.id + "," + format_double(it.score) + "," + (it.predicted > 0 ? "1" : "-1") + "\n";
  }
  return out;
}

}  // namespace pdmargin::io
