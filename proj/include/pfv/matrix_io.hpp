#pragma once

#include "pfv/skew.hpp"

#include <iosfwd>
#include <string>

namespace pfv {

/// Reads a skew matrix from JSON: {"n": <size>, "upper": [<strict upper
/// triangle, row major, n(n-1)/2 numbers>]}. Throws std::runtime_error
/// on malformed input (bad JSON, wrong field types, length mismatch).
SkewMatrix read_skew_json(std::istream& in);
SkewMatrix read_skew_json_file(const std::string& path);

/// Writes the matching JSON representation.
void write_skew_json(std::ostream& out, const SkewMatrix& m);
void write_skew_json_file(const std::string& path, const SkewMatrix& m);

}  // namespace pfv
