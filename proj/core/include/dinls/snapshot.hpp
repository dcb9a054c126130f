#pragma once

#include <iosfwd>
#include <string>

#include "dinls/grid.hpp"

namespace dinls {

// Field snapshot formats.
//
// CSV: header line "r,re_u,im_u", then one row per node, values printed with
// 17 significant digits so a read-back reproduces the doubles exactly.
//
// Binary (little-endian): int32 N, float64 R, int32 M, float64 t, followed by
// M pairs of float64 (Re u_j, Im u_j).

void write_snapshot_csv(std::ostream& out, const Field& field);
void write_snapshot_binary(std::ostream& out, const Field& field);

/// Reads a binary snapshot and rebuilds its grid. Throws IoError / BadGridSpec.
Field read_snapshot_binary(std::istream& in);
/// Reads CSV values onto an existing grid (the r column must match the nodes).
Field read_snapshot_csv(std::istream& in, const GridPtr& grid, double time = 0.0);

/// Binary snapshot from a file path.
Field load_snapshot(const std::string& path);

}  // namespace dinls
