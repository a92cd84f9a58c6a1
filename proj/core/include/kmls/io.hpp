#pragma once

#include <iosfwd>
#include <string>

#include "kmls/point_set.hpp"

namespace kmls {

// Reads numeric rows, one point per line, comma- or whitespace-separated
// (decided per line). Blank lines are skipped. Ragged rows, non-numeric or
// non-finite tokens, and inputs with no rows raise ParseError carrying the
// 1-based line number.
PointSet load_points(std::istream& in);
PointSet load_points(const std::string& path);

// Writes comma-separated rows with shortest round-trip formatting, so
// load_points(write_points(ps)) reproduces every coordinate bit for bit.
void write_points(const PointSet& points, std::ostream& out);
void write_points(const PointSet& points, const std::string& path);

} // namespace kmls
