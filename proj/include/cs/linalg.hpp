#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cs {

using SignalVector = std::vector<double>;
using IndexSet = std::vector<int>;  // strictly increasing column indices

class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Dense real matrix, row-major. Treated as immutable once filled.
class DenseMatrix {
public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw DimensionError("DenseMatrix: negative dimension");
  }
  DenseMatrix(int rows, int cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw DimensionError("DenseMatrix: negative dimension");
    if (data_.size() != static_cast<size_t>(rows) * cols)
      throw DimensionError("DenseMatrix: entries length != rows*cols");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& entries() const { return data_; }

private:
  int rows_, cols_;
  std::vector<double> data_;
};

// Vector helpers.
double norm2(const SignalVector& v);
double norm1(const SignalVector& v);
int norm0(const SignalVector& v);  // count of exact nonzeros
double dot(const SignalVector& a, const SignalVector& b);
SignalVector subtract(const SignalVector& a, const SignalVector& b);
SignalVector scale(const SignalVector& v, double c);
bool all_finite(const SignalVector& v);

// Matrix helpers.
DenseMatrix transpose(const DenseMatrix& A);
DenseMatrix subtract(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix scale(const DenseMatrix& A, double c);
DenseMatrix identity(int n);
SignalVector matvec(const DenseMatrix& A, const SignalVector& x);
SignalVector matvec_transposed(const DenseMatrix& A, const SignalVector& x);

/// Columns of A selected by S, in the order given by S.
DenseMatrix submatrix(const DenseMatrix& A, const IndexSet& S);

/// Thin SVD A = U diag(sigma) V^T with sigma descending.
struct Svd {
  DenseMatrix u;               // rows x k
  std::vector<double> sigma;   // k = min(rows, cols), descending
  DenseMatrix v;               // cols x k
};

/// One-sided Jacobi SVD; converges when every column-pair Gram
/// off-diagonal is below 1e-14 relative.
Svd svd(const DenseMatrix& A);

/// Singular values only (descending).
std::vector<double> singular_values(const DenseMatrix& A);

double spectral_norm(const DenseMatrix& A);
std::pair<double, double> extreme_singular_values(const DenseMatrix& A);  // (min, max)

/// Minimizer of ||Az - y||_2. Householder QR when A has full column rank;
/// minimum-norm pseudo-inverse solution otherwise (singular values below
/// 1e-12 * sigma_max treated as zero).
SignalVector least_squares(const DenseMatrix& A, const SignalVector& y);

}  // namespace cs
