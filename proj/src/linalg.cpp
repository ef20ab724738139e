#include "cs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cs {

double norm2(const SignalVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm1(const SignalVector& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

int norm0(const SignalVector& v) {
  int n = 0;
  for (double x : v)
    if (x != 0.0) ++n;
  return n;
}

double dot(const SignalVector& a, const SignalVector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SignalVector subtract(const SignalVector& a, const SignalVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector subtract: length mismatch");
  SignalVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

SignalVector scale(const SignalVector& v, double c) {
  SignalVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool all_finite(const SignalVector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

DenseMatrix transpose(const DenseMatrix& A) {
  DenseMatrix T(A.cols(), A.rows());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) T.at(j, i) = A(i, j);
  return T;
}

DenseMatrix subtract(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("matrix subtract: shape mismatch");
  DenseMatrix R(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) R.at(i, j) = A(i, j) - B(i, j);
  return R;
}

DenseMatrix scale(const DenseMatrix& A, double c) {
  DenseMatrix R(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) R.at(i, j) = c * A(i, j);
  return R;
}

DenseMatrix identity(int n) {
  DenseMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1.0;
  return I;
}

SignalVector matvec(const DenseMatrix& A, const SignalVector& x) {
  if (static_cast<int>(x.size()) != A.cols()) throw DimensionError("matvec: length mismatch");
  SignalVector y(A.rows(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

SignalVector matvec_transposed(const DenseMatrix& A, const SignalVector& x) {
  if (static_cast<int>(x.size()) != A.rows())
    throw DimensionError("matvec_transposed: length mismatch");
  SignalVector y(A.cols(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    const double xi = x[i];
    for (int j = 0; j < A.cols(); ++j) y[j] += A(i, j) * xi;
  }
  return y;
}

DenseMatrix submatrix(const DenseMatrix& A, const IndexSet& S) {
  for (int j : S)
    if (j < 0 || j >= A.cols()) throw DimensionError("submatrix: column index out of range");
  DenseMatrix R(A.rows(), static_cast<int>(S.size()));
  for (int i = 0; i < A.rows(); ++i)
    for (size_t k = 0; k < S.size(); ++k) R.at(i, static_cast<int>(k)) = A(i, S[k]);
  return R;
}

namespace {

// One-sided (Hestenes) Jacobi on the columns of B, rows x n with rows >= n.
// On return columns are mutually orthogonal; if V is non-null it accumulates
// the applied right rotations (n x n, starts as identity).
void jacobi_orthogonalize(std::vector<double>& b, int rows, int n, std::vector<double>* v) {
  constexpr double kTol = 1e-14;
  const int max_sweeps = 60;
  auto col = [&](int j) { return b.data() + static_cast<size_t>(j) * rows; };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double* bp = col(p);
        double* bq = col(q);
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < rows; ++i) {
          app += bp[i] * bp[i];
          aqq += bq[i] * bq[i];
          apq += bp[i] * bq[i];
        }
        if (std::fabs(apq) <= kTol * std::sqrt(app * aqq)) continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < rows; ++i) {
          const double x = bp[i], y = bq[i];
          bp[i] = c * x - s * y;
          bq[i] = s * x + c * y;
        }
        if (v) {
          double* vp = v->data() + static_cast<size_t>(p) * n;
          double* vq = v->data() + static_cast<size_t>(q) * n;
          for (int i = 0; i < n; ++i) {
            const double x = vp[i], y = vq[i];
            vp[i] = c * x - s * y;
            vq[i] = s * x + c * y;
          }
        }
      }
    }
    if (!rotated) break;
  }
}

Svd svd_tall(const DenseMatrix& A) {
  const int m = A.rows(), n = A.cols();
  // column-major working copy
  std::vector<double> b(static_cast<size_t>(m) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) b[static_cast<size_t>(j) * m + i] = A(i, j);
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);  // column-major
  for (int j = 0; j < n; ++j) v[static_cast<size_t>(j) * n + j] = 1.0;
  jacobi_orthogonalize(b, m, n, &v);

  std::vector<double> sig(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double x = b[static_cast<size_t>(j) * m + i];
      s += x * x;
    }
    sig[j] = std::sqrt(s);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return sig[a] > sig[c]; });

  Svd out;
  out.sigma.resize(n);
  out.u = DenseMatrix(m, n);
  out.v = DenseMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    out.sigma[k] = sig[j];
    const double inv = sig[j] > 0.0 ? 1.0 / sig[j] : 0.0;
    for (int i = 0; i < m; ++i) out.u.at(i, k) = b[static_cast<size_t>(j) * m + i] * inv;
    for (int i = 0; i < n; ++i) out.v.at(i, k) = v[static_cast<size_t>(j) * n + i];
  }
  return out;
}

}  // namespace

Svd svd(const DenseMatrix& A) {
  if (A.empty()) throw DimensionError("svd: empty matrix");
  if (A.rows() >= A.cols()) return svd_tall(A);
  Svd t = svd_tall(transpose(A));
  Svd out;
  out.sigma = std::move(t.sigma);
  out.u = std::move(t.v);
  out.v = std::move(t.u);
  return out;
}

std::vector<double> singular_values(const DenseMatrix& A) {
  if (A.empty()) throw DimensionError("singular_values: empty matrix");
  const DenseMatrix& W = A;
  if (A.rows() >= A.cols()) {
    const int m = W.rows(), n = W.cols();
    std::vector<double> b(static_cast<size_t>(m) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i) b[static_cast<size_t>(j) * m + i] = W(i, j);
    jacobi_orthogonalize(b, m, n, nullptr);
    std::vector<double> sig(n);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        const double x = b[static_cast<size_t>(j) * m + i];
        s += x * x;
      }
      sig[j] = std::sqrt(s);
    }
    std::sort(sig.begin(), sig.end(), std::greater<>());
    return sig;
  }
  return singular_values(transpose(A));
}

double spectral_norm(const DenseMatrix& A) {
  return singular_values(A).front();
}

std::pair<double, double> extreme_singular_values(const DenseMatrix& A) {
  std::vector<double> s = singular_values(A);
  return {s.back(), s.front()};
}

namespace {

SignalVector least_squares_svd(const DenseMatrix& A, const SignalVector& y) {
  Svd f = svd(A);
  const double cutoff = 1e-12 * (f.sigma.empty() ? 0.0 : f.sigma.front());
  SignalVector z(A.cols(), 0.0);
  for (size_t k = 0; k < f.sigma.size(); ++k) {
    if (f.sigma[k] <= cutoff) continue;
    double c = 0.0;
    for (int i = 0; i < A.rows(); ++i) c += f.u(i, static_cast<int>(k)) * y[i];
    c /= f.sigma[k];
    for (int j = 0; j < A.cols(); ++j) z[j] += f.v(j, static_cast<int>(k)) * c;
  }
  return z;
}

}  // namespace

SignalVector least_squares(const DenseMatrix& A, const SignalVector& y) {
  if (static_cast<int>(y.size()) != A.rows())
    throw DimensionError("least_squares: rhs length != rows");
  if (A.empty()) throw DimensionError("least_squares: empty matrix");
  const int m = A.rows(), n = A.cols();
  if (m < n) return least_squares_svd(A, y);

  // Householder QR, column-major working copy; rhs transformed in place.
  std::vector<double> r(static_cast<size_t>(m) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(j) * m + i] = A(i, j);
  SignalVector b = y;
  auto col = [&](int j) { return r.data() + static_cast<size_t>(j) * m; };

  for (int k = 0; k < n; ++k) {
    double* ck = col(k);
    double nrm = 0.0;
    for (int i = k; i < m; ++i) nrm += ck[i] * ck[i];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double alpha = ck[k] >= 0 ? -nrm : nrm;
    // Householder vector v, v[k] = ck[k] - alpha, stored locally.
    std::vector<double> hv(m - k);
    hv[0] = ck[k] - alpha;
    for (int i = k + 1; i < m; ++i) hv[i - k] = ck[i];
    double vtv = 0.0;
    for (double x : hv) vtv += x * x;
    if (vtv == 0.0) continue;
    for (int j = k; j < n; ++j) {
      double* cj = col(j);
      double s = 0.0;
      for (int i = k; i < m; ++i) s += hv[i - k] * cj[i];
      s *= 2.0 / vtv;
      for (int i = k; i < m; ++i) cj[i] -= s * hv[i - k];
    }
    double s = 0.0;
    for (int i = k; i < m; ++i) s += hv[i - k] * b[i];
    s *= 2.0 / vtv;
    for (int i = k; i < m; ++i) b[i] -= s * hv[i - k];
  }

  double maxdiag = 0.0;
  for (int k = 0; k < n; ++k) maxdiag = std::max(maxdiag, std::fabs(col(k)[k]));
  for (int k = 0; k < n; ++k)
    if (std::fabs(col(k)[k]) <= 1e-12 * maxdiag) return least_squares_svd(A, y);

  SignalVector z(n, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    double s = b[k];
    for (int j = k + 1; j < n; ++j) s -= col(j)[k] * z[j];
    z[k] = s / col(k)[k];
  }
  return z;
}

}  // namespace cs
