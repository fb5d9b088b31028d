#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdmargin/harness.hpp"

namespace pdmargin::io {

using nlohmann::json;

// {"id": str, "dims": {"0": [[b, d], ...], "1": [...], "2": [...]}},
// infinite deaths written as the string "inf".
json diagram_to_json(const PersistenceDiagram& pd);
PersistenceDiagram diagram_from_json(const json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

PersistenceDiagram read_diagram(const std::filesystem::path& path);
void write_diagram(const std::filesystem::path& path, const PersistenceDiagram& pd);

// All *.json diagram files in a directory, sorted by file name.
std::vector<PersistenceDiagram> read_diagram_dir(const std::filesystem::path& dir);

// "id,label" with a header row; labels -1/+1 (also 1, +1).
std::vector<std::pair<std::string, int>> read_labels(const std::filesystem::path& path);
std::string labels_csv(const std::vector<std::pair<std::string, int>>& labels);

// Orders `diagrams` to follow the label file; throws InputError on a missing id.
Dataset join_labels(std::vector<PersistenceDiagram> diagrams,
                    const std::vector<std::pair<std::string, int>>& labels);

// id column followed by f0..f{m-1}.
std::string features_csv(const std::vector<std::string>& ids,
                         const std::vector<std::vector<double>>& rows);

json matrix_to_json(const DistanceMatrix& m);

json qp_report_to_json(const QpReport& r);
json model_to_json(const DiagramClassifier& c);
DiagramClassifier model_from_json(const json& j);

std::string predictions_csv(const std::vector<ScoredItem>& items);

// Decimal text with round-trip precision.
std::string format_double(double x);

}  // namespace pdmargin::io
