#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pdmargin/types.hpp"

namespace pdmargin {

// Extracts C-alpha coordinates from fixed-column PDB text.
//
// Only ATOM records of the first model are read; HETATM records are skipped.
// Chains are concatenated in file order. For each (chain, residue number,
// insertion code) only the first CA record is kept, which drops alternate
// locations. Throws ParseError for an unreadable coordinate field and
// EmptyStructureError when no CA atom is present.
PointCloud parse_structure(std::string_view text, std::string id = {});

// Whitespace-separated coordinates, one point per line, '#' lines ignored.
// An input without data lines yields an empty cloud.
PointCloud parse_xyz(std::string_view text, std::string id = {});

// Inverse of parse_xyz; coordinates are written with round-trip precision.
std::string format_xyz(const PointCloud& pc);

// Dispatches on extension: .pdb/.ent -> parse_structure, anything else -> parse_xyz.
// The cloud id defaults to the file stem.
PointCloud load_point_cloud(const std::filesystem::path& path);

// Edge (i, j) iff ||p_i - p_j|| < threshold (strict).
ContactGraph contact_graph(const PointCloud& pc, double threshold = 5.0);

}  // namespace pdmargin
