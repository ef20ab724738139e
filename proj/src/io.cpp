#include "cs/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cs {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_matrix(std::ostream& os, const DenseMatrix& A) {
  os << A.rows() << ' ' << A.cols() << '\n';
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(A(i, j));
    }
    os << '\n';
  }
}

DenseMatrix read_matrix(std::istream& is) {
  int rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows <= 0 || cols <= 0)
    throw std::runtime_error("matrix fixture: bad header");
  DenseMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double x;
      if (!(is >> x)) throw std::runtime_error("matrix fixture: truncated data");
      A.at(i, j) = x;
    }
  return A;
}

void write_matrix_file(const std::string& path, const DenseMatrix& A) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix(f, A);
}

DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return read_matrix(f);
}

SignalVector read_vector_file(const std::string& path) {
  DenseMatrix M = read_matrix_file(path);
  if (M.cols() != 1) throw std::runtime_error("vector fixture must be n x 1: " + path);
  SignalVector v(M.rows());
  for (int i = 0; i < M.rows(); ++i) v[i] = M(i, 0);
  return v;
}

void write_vector_file(const std::string& path, const SignalVector& v) {
  DenseMatrix M(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) M.at(static_cast<int>(i), 0) = v[i];
  write_matrix_file(path, M);
}

}  // namespace cs
