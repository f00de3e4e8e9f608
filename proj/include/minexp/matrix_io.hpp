#pragma once

#include <iosfwd>
#include <string>

#include "minexp/graph.hpp"
#include "minexp/linalg.hpp"

namespace minexp::io {

// Text format:
//
//   # optional comment lines
//   n m d epsilon1
//   0: r:w r:w ...
//   1: r:w ...
//
// one line per column in order, weights printed with 17 significant digits
// so a write/read round trip is exact.

void write_matrix(std::ostream& out, const MeasurementMatrix& a);
void write_matrix(const std::string& path, const MeasurementMatrix& a);

/// FormatError (with the line number) on malformed input or a column with more
/// than d entries; ChecksumMismatch when the column count disagrees with the
/// header or a column sum is off d by more than 1e-9 d.
MeasurementMatrix read_matrix(std::istream& in);
MeasurementMatrix read_matrix(const std::string& path);

/// Whitespace-separated numbers, one per line on output.
void write_vector(std::ostream& out, const linalg::Vector& v);
void write_vector(const std::string& path, const linalg::Vector& v);
linalg::Vector read_vector(std::istream& in);
linalg::Vector read_vector(const std::string& path);

}  // namespace minexp::io
