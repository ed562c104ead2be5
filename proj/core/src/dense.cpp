#include "erm/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "erm/error.hpp"

namespace erm {

NotPositiveDefinite::NotPositiveDefinite(std::size_t pivot, double value)
    : Error("matrix is not positive definite: pivot " + std::to_string(pivot) + " is " +
            std::to_string(value)),
      pivot_(pivot),
      value_(value) {}

NonConvergence::NonConvergence(int sweeps, double off_diagonal_norm)
    : Error("Jacobi iteration did not converge after " + std::to_string(sweeps) +
            " sweeps; off-diagonal norm " + std::to_string(off_diagonal_norm)),
      sweeps_(sweeps),
      off_norm_(off_diagonal_norm) {}

// -- Matrix ------------------------------------------------------------------

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::column(std::span<const double> values) {
  Matrix m(values.size(), 1);
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

// -- SymmetricMatrix ---------------------------------------------------------

SymmetricMatrix SymmetricMatrix::from_dense(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("symmetric matrix must be square");
  SymmetricMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s.data_[i * s.dim_ + i] = m(i, i);
    for (std::size_t j = 0; j < i; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  }
  return s;
}

SymmetricMatrix::SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymmetricMatrix(from_dense(Matrix(rows))) {}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> d) {
  SymmetricMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.data_[i * s.dim_ + i] = d[i];
  return s;
}

void SymmetricMatrix::add(std::size_t i, std::size_t j, double v) {
  data_[i * dim_ + j] += v;
  if (i != j) data_[j * dim_ + i] = data_[i * dim_ + j];
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> x) const {
  if (x.size() != dim_) throw InvalidArgument("dimension mismatch in matrix-vector product");
  std::vector<double> y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += data_[i * dim_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix SymmetricMatrix::multiply(const Matrix& x) const {
  if (x.rows() != dim_) throw InvalidArgument("dimension mismatch in matrix product");
  Matrix y(dim_, x.cols());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const double a = data_[i * dim_ + k];
      for (std::size_t c = 0; c < x.cols(); ++c) y(i, c) += a * x(k, c);
    }
  }
  return y;
}

SymmetricMatrix SymmetricMatrix::scaled(double alpha) const {
  SymmetricMatrix s(*this);
  for (double& x : s.data_) x *= alpha;
  return s;
}

SymmetricMatrix SymmetricMatrix::principal(std::span<const std::size_t> indices) const {
  SymmetricMatrix s(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = 0; b < indices.size(); ++b) {
      s.data_[a * s.dim_ + b] = (*this)(indices[a], indices[b]);
    }
  }
  return s;
}

// -- Jacobi eigensolver ------------------------------------------------------

std::vector<double> Spectrum::vector(std::size_t k) const {
  std::vector<double> v(eigenvectors.rows());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = eigenvectors(r, k);
  return v;
}

namespace {

struct JacobiState {
  std::vector<double> a;  // row-major working copy
  std::vector<double> v;  // accumulated rotations, empty if not requested
  int sweeps = 0;
};

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
  return std::sqrt(s);
}

bool converged(const std::vector<double>& a, std::size_t n, double threshold) {
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (!(std::abs(a[p * n + q]) <= threshold)) return false;
  return true;
}

void rotate(JacobiState& st, std::size_t n, std::size_t p, std::size_t q) {
  auto& a = st.a;
  const double apq = a[p * n + q];
  if (apq == 0.0) return;
  const double app = a[p * n + p];
  const double aqq = a[q * n + q];
  const double theta = (aqq - app) / (2.0 * apq);
  double t = std::abs(theta) > 1e150 ? 0.5 / std::abs(theta)
                                     : 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  a[p * n + p] = app - t * apq;
  a[q * n + q] = aqq + t * apq;
  a[p * n + q] = a[q * n + p] = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a[r * n + p];
    const double arq = a[r * n + q];
    a[r * n + p] = a[p * n + r] = c * arp - s * arq;
    a[r * n + q] = a[q * n + r] = s * arp + c * arq;
  }
  if (!st.v.empty()) {
    auto& v = st.v;
    for (std::size_t r = 0; r < n; ++r) {
      const double vrp = v[r * n + p];
      const double vrq = v[r * n + q];
      v[r * n + p] = c * vrp - s * vrq;
      v[r * n + q] = s * vrp + c * vrq;
    }
  }
}

JacobiState run_jacobi(const SymmetricMatrix& m, double tol, bool vectors) {
  const std::size_t n = m.dim();
  if (n == 0) throw InvalidArgument("eigen_sym: empty matrix");
  if (!(tol > 0.0)) throw InvalidArgument("eigen_sym: tolerance must be positive");

  JacobiState st;
  st.a.assign(m.data().begin(), m.data().end());
  if (vectors) {
    st.v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) st.v[i * n + i] = 1.0;
  }
  const double threshold = tol * m.frobenius_norm();
  while (!converged(st.a, n, threshold)) {
    if (st.sweeps == kMaxJacobiSweeps) {
      throw NonConvergence(st.sweeps, off_diagonal_norm(st.a, n));
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(st, n, p, q);
    ++st.sweeps;
  }
  return st;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& a, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] < a[y * n + y];
  });
  return order;
}

}  // namespace

Spectrum eigen_sym(const SymmetricMatrix& m, double tol) {
  const std::size_t n = m.dim();
  JacobiState st = run_jacobi(m, tol, true);
  const auto order = ascending_order(st.a, n);

  Spectrum out;
  out.sweeps = st.sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = st.a[order[k] * n + order[k]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = st.v[r * n + order[k]];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto vk = out.vector(k);
    const auto hv = m.multiply(vk);
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = hv[r] - out.eigenvalues[k] * vk[r];
      s += d * d;
    }
    out.max_residual = std::max(out.max_residual, std::sqrt(s));
  }
  return out;
}

std::vector<double> eigenvalues_sym(const SymmetricMatrix& m, double tol) {
  const std::size_t n = m.dim();
  JacobiState st = run_jacobi(m, tol, false);
  std::vector<double> ev(n);
  for (std::size_t k = 0; k < n; ++k) ev[k] = st.a[k * n + k];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// -- Cholesky ----------------------------------------------------------------

CholeskyFactor::CholeskyFactor(const SymmetricMatrix& a)
    : dim_(a.dim()), lower_(a.dim() * a.dim(), 0.0), pivots_(a.dim()) {
  const std::size_t n = dim_;
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower_[j * n + k] * lower_[j * n + k];
    if (!(d > 0.0)) throw NotPositiveDefinite(j + 1, d);
    pivots_[j] = d;
    const double ljj = std::sqrt(d);
    lower_[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_[i * n + k] * lower_[j * n + k];
      lower_[i * n + j] = s / ljj;
    }
  }
}

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  if (b.size() != dim_) throw InvalidArgument("right-hand side has wrong length");
  const std::size_t n = dim_;
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower_[i * n + k] * x[k];
    x[i] = s / lower_[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= lower_[k * n + i] * x[k];
    x[i] = s / lower_[i * n + i];
  }
  return x;
}

Matrix CholeskyFactor::solve(const Matrix& b) const {
  if (b.rows() != dim_) throw InvalidArgument("right-hand side has wrong row count");
  Matrix x(b.rows(), b.cols());
  std::vector<double> col(dim_);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < dim_; ++r) col[r] = b(r, c);
    const auto sol = solve(col);
    for (std::size_t r = 0; r < dim_; ++r) x(r, c) = sol[r];
  }
  return x;
}

double CholeskyFactor::pivot_ratio() const {
  if (pivots_.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(pivots_.begin(), pivots_.end());
  return *hi / *lo;
}

Matrix solve_spd(const SymmetricMatrix& a, const Matrix& b) { return CholeskyFactor(a).solve(b); }

}  // namespace erm
