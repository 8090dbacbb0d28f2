#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "convexpos/geometry.hpp"

namespace convexpos {

// Polygon file format: {"vertices": [[x, y], ...]}. Numbers are written with
// 17 significant digits so files round-trip bit-exactly.
Polygon read_polygon_json(const std::string& path);
Polygon parse_polygon_json(const std::string& text);
std::string polygon_to_json(const Polygon& poly);
void write_polygon_json(const Polygon& poly, const std::string& path);

// Points file format: CSV with one "x,y" pair per line; a non-numeric first
// line is treated as a header.
std::vector<Vec2> read_points_csv(const std::string& path);
std::vector<Vec2> parse_points_csv(std::istream& in);

// FNV-1a over the 17-digit decimal forms of the vertices; stable id used in
// CSV output.
std::uint64_t polygon_hash(const Polygon& poly);
std::string polygon_hash_hex(const Polygon& poly);

// shortest decimal form that parses back to the same double
std::string format_double(double value);

}  // namespace convexpos
