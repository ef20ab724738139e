#pragma once

#include <iosfwd>
#include <string>

#include "cs/linalg.hpp"

namespace cs {

/// Lossless decimal formatting (17 significant digits).
std::string format_double(double x);

// Fixture format: first line "rows cols", then one row per line,
// space-separated decimal literals. Vectors are stored as len x 1 matrices.
void write_matrix(std::ostream& os, const DenseMatrix& A);
DenseMatrix read_matrix(std::istream& is);

void write_matrix_file(const std::string& path, const DenseMatrix& A);
DenseMatrix read_matrix_file(const std::string& path);

SignalVector read_vector_file(const std::string& path);
void write_vector_file(const std::string& path, const SignalVector& v);

}  // namespace cs
