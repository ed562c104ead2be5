#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace erm {

// Dense row-major matrix, used for right-hand sides and rectangular blocks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }

  static Matrix column(std::span<const double> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Dense real symmetric matrix. Every mutation writes both (i, j) and (j, i),
// so entries are symmetric bit-for-bit.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
  // Symmetrizes by averaging (i, j) and (j, i). Throws InvalidArgument when
  // the rows are ragged.
  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows);
  static SymmetricMatrix from_dense(const Matrix& m);
  static SymmetricMatrix diagonal(std::span<const double> d);

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * dim_ + j] = v;
    data_[j * dim_ + i] = v;
  }
  void add(std::size_t i, std::size_t j, double v);

  std::span<const double> data() const { return data_; }

  double frobenius_norm() const;
  std::vector<double> multiply(std::span<const double> x) const;
  Matrix multiply(const Matrix& x) const;
  SymmetricMatrix scaled(double alpha) const;
  // Principal submatrix on the given index list, in that order.
  SymmetricMatrix principal(std::span<const std::size_t> indices) const;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Ascending eigenvalues with orthonormal eigenvectors.
struct Spectrum {
  std::vector<double> eigenvalues;
  // eigenvectors(r, k) is component r of the k-th eigenvector.
  Matrix eigenvectors;
  // max_k ||A v_k - lambda_k v_k||_2
  double max_residual = 0.0;
  int sweeps = 0;

  std::vector<double> vector(std::size_t k) const;
};

inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr int kMaxJacobiSweeps = 100;

// Cyclic Jacobi rotations until every off-diagonal magnitude is at most
// tol * ||A||_F. Throws NonConvergence after kMaxJacobiSweeps sweeps (NaN
// input ends up here too) and InvalidArgument for dim 0 or tol <= 0.
Spectrum eigen_sym(const SymmetricMatrix& a, double tol = kDefaultEigenTolerance);

// Eigenvalues only; same algorithm without accumulating rotations.
std::vector<double> eigenvalues_sym(const SymmetricMatrix& a,
                                    double tol = kDefaultEigenTolerance);

// A = L L^T without pivoting.
class CholeskyFactor {
 public:
  // Throws NotPositiveDefinite at the first non-positive pivot.
  explicit CholeskyFactor(const SymmetricMatrix& a);

  std::size_t dim() const { return dim_; }
  Matrix solve(const Matrix& b) const;
  std::vector<double> solve(std::span<const double> b) const;

  // Squared diagonal of L, i.e. the Gaussian elimination pivots.
  std::span<const double> pivots() const { return pivots_; }
  // max pivot / min pivot; 1 for an empty factor.
  double pivot_ratio() const;

 private:
  std::size_t dim_;
  std::vector<double> lower_;
  std::vector<double> pivots_;
};

Matrix solve_spd(const SymmetricMatrix& a, const Matrix& b);

}  // namespace erm
