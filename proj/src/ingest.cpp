#include "pdmargin/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "pdmargin/error.hpp"

namespace pdmargin {

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<std::vector<std::size_t>> ContactGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n_nodes);
  for (const auto& [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!fn(line, ++line_no)) return;
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

PointCloud parse_structure(std::string_view text, std::string id) {
  PointCloud pc;
  pc.id = std::move(id);
  pc.dim = 3;
  // (chain, residue number, insertion code)
  std::set<std::tuple<char, std::string, char>> seen;

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto record = line.substr(0, 6);
    if (record.starts_with("ENDMDL")) return false;
    if (record != "ATOM  " && trim(record) != "ATOM") return true;
    if (line.size() < 16 || trim(line.substr(12, 4)) != "CA") return true;
    if (line.size() < 54) throw ParseError("ATOM record too short for coordinates", line_no);

    const char chain = line.size() > 21 ? line[21] : ' ';
    const std::string residue(trim(line.substr(22, 4)));
    const char icode = line.size() > 26 ? line[26] : ' ';
    if (!seen.emplace(chain, residue, icode).second) return true;

    double xyz[3];
    static constexpr const char* kAxis[3] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
      if (!parse_double(line.substr(30 + 8 * k, 8), xyz[k])) {
        throw ParseError(std::string("malformed ") + kAxis[k] + " coordinate", line_no);
      }
    }
    pc.coords.insert(pc.coords.end(), xyz, xyz + 3);
    return true;
  });

  if (pc.empty()) throw EmptyStructureError("empty structure: no CA atoms in " + pc.id);
  return pc;
}

PointCloud parse_xyz(std::string_view text, std::string id) {
  PointCloud pc;
  pc.id = std::move(id);
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') return true;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos < body.size()) {
      const auto start = body.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      auto stop = body.find_first_of(" \t", start);
      if (stop == std::string_view::npos) stop = body.size();
      double v;
      if (!parse_double(body.substr(start, stop - start), v)) {
        throw ParseError("malformed coordinate '" + std::string(body.substr(start, stop - start)) + "'",
                         line_no);
      }
      row.push_back(v);
      pos = stop;
    }
    if (pc.dim == 0) {
      pc.dim = row.size();
    } else if (row.size() != pc.dim) {
      throw ParseError("expected " + std::to_string(pc.dim) + " coordinates, got " +
                           std::to_string(row.size()),
                       line_no);
    }
    pc.coords.insert(pc.coords.end(), row.begin(), row.end());
    return true;
  });
  return pc;
}

std::string format_xyz(const PointCloud& pc) {
  std::ostringstream out;
  out.precision(17);
  if (!pc.id.empty()) out << "# " << pc.id << '\n';
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto p = pc.point(i);
    for (std::size_t k = 0; k < pc.dim; ++k) out << (k ? " " : "") << p[k];
    out << '\n';
  }
  return out.str();
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto ext = path.extension().string();
  if (ext == ".pdb" || ext == ".ent" || ext == ".PDB") {
    return parse_structure(buf.str(), path.stem().string());
  }
  return parse_xyz(buf.str(), path.stem().string());
}

ContactGraph contact_graph(const PointCloud& pc, double threshold) {
  if (pc.empty()) throw InputError("contact graph needs a non-empty point cloud");
  if (!(threshold > 0.0)) throw InputError("contact threshold must be positive");
  for (double v : pc.coords) {
    if (!std::isfinite(v)) throw InputError("non-finite coordinate in " + pc.id);
  }
  ContactGraph g;
  g.n_nodes = pc.size();
  g.threshold = threshold;
  for (std::size_t i = 0; i < g.n_nodes; ++i) {
    for (std::size_t j = i + 1; j < g.n_nodes; ++j) {
      if (euclidean(pc.point(i), pc.point(j)) < threshold) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

}  // namespace pdmargin
