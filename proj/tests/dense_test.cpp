#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "erm/dense.hpp"
#include "erm/error.hpp"
#include "erm/graph.hpp"
#include "oracles.hpp"

namespace erm {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

SymmetricMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, u(rng));
  return a;
}

void expect_orthonormal(const Spectrum& s) {
  const std::size_t n = s.eigenvalues.size();
  for (std::size_t a = 0; a < n; ++a) {
    const auto va = s.vector(a);
    EXPECT_NEAR(dot(va, va), 1.0, 1e-10);
    for (std::size_t b = a + 1; b < n; ++b) EXPECT_NEAR(dot(va, s.vector(b)), 0.0, 1e-10);
  }
}

TEST(SymmetricMatrix, InitializerSymmetrizes) {
  const SymmetricMatrix a{{1, 2}, {4, 5}};
  EXPECT_EQ(a(0, 1), 3.0);
  EXPECT_EQ(a(1, 0), 3.0);
  EXPECT_THROW((SymmetricMatrix{{1, 2}, {3}}), InvalidArgument);
}

TEST(EigenSym, UnitTriangleLaplacian) {
  const auto s = eigen_sym(SymmetricMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  ASSERT_EQ(s.eigenvalues.size(), 3u);
  EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 3.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[2], 3.0, 1e-12);
  expect_orthonormal(s);
  EXPECT_LE(s.max_residual, 1e-12);
  // The degenerate eigenspace is orthogonal to constants; a basis of it is
  // arbitrary, so only that property is checked.
  const double ones[] = {1, 1, 1};
  EXPECT_NEAR(dot(s.vector(1), ones), 0.0, 1e-12);
  EXPECT_NEAR(dot(s.vector(2), ones), 0.0, 1e-12);
}

TEST(EigenSym, TwoEqualAtThreeHalvesAgainstCharacteristicPolynomial) {
  const auto g = build_graph(3, {{0, 1, 0.375}, {0, 2, 1.5}, {1, 2, 1.5}});
  const auto roots = testing::char_poly_roots(testing::laplacian_ld(g));
  ASSERT_EQ(roots.size(), 3u);
  // Frozen expectations 0, 9/4, 9/2; confirm the oracle sees them too.
  EXPECT_NEAR(static_cast<double>(roots[0]), 0.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(roots[1]), 2.25, 1e-12);
  EXPECT_NEAR(static_cast<double>(roots[2]), 4.5, 1e-12);

  const auto s = eigen_sym(laplacian(g));
  EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 2.25, 1e-12);
  EXPECT_NEAR(s.eigenvalues[2], 4.5, 1e-12);
}

TEST(EigenSym, DiagonalMatrixPermutesBasis) {
  const double d[] = {5, 2, 7};
  const auto s = eigen_sym(SymmetricMatrix::diagonal(d));
  EXPECT_EQ(s.eigenvalues, (std::vector<double>{2, 5, 7}));
  EXPECT_EQ(s.vector(0), (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(s.vector(1), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(s.vector(2), (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(s.sweeps, 0);
}

TEST(EigenSym, OneByOneAndZero) {
  EXPECT_EQ(eigen_sym(SymmetricMatrix{{-3}}).eigenvalues, (std::vector<double>{-3}));
  EXPECT_EQ(eigen_sym(SymmetricMatrix(4)).eigenvalues, (std::vector<double>(4, 0.0)));
}

TEST(EigenSym, Errors) {
  EXPECT_THROW(eigen_sym(SymmetricMatrix{}), InvalidArgument);
  EXPECT_THROW(eigen_sym(SymmetricMatrix{{1}}, 0.0), InvalidArgument);
  SymmetricMatrix poisoned{{1, 2}, {2, 1}};
  poisoned.set(0, 1, std::nan(""));
  try {
    eigen_sym(poisoned);
    FAIL() << "NaN matrix converged";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.sweeps(), kMaxJacobiSweeps);
  }
}

TEST(EigenSym, ReconstructsRandomSymmetric) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 12;
    const auto a = random_symmetric(rng, n);
    const auto s = eigen_sym(a);
    for (std::size_t k = 1; k < n; ++k) ASSERT_LE(s.eigenvalues[k - 1], s.eigenvalues[k]);
    expect_orthonormal(s);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double r = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          r += s.eigenvectors(i, k) * s.eigenvalues[k] * s.eigenvectors(j, k);
        err += (r - a(i, j)) * (r - a(i, j));
      }
    }
    ASSERT_LE(std::sqrt(err), 1e-9 * a.frobenius_norm()) << "n = " << n;
    ASSERT_LE(s.max_residual, 1e-10 * std::max(1.0, a.frobenius_norm()));
    // eigenvalues-only path agrees
    const auto ev = eigenvalues_sym(a);
    for (std::size_t k = 0; k < n; ++k) ASSERT_NEAR(ev[k], s.eigenvalues[k], 1e-12);
  }
}

TEST(EigenSym, LaplacianSpectrumProperties) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 11;
    const auto g = testing::random_connected_graph(rng, n);
    const auto h = laplacian(g);
    const auto s = eigen_sym(h);
    const double scale = s.eigenvalues.back();
    ASSERT_GE(s.eigenvalues.front(), -1e-10 * scale);
    ASSERT_LE(s.eigenvalues.front(), 1e-10 * scale);
    const std::vector<double> ones(n, 1.0);
    const auto h1 = h.multiply(ones);
    ASSERT_LE(std::abs(dot(h1, ones)) / n, 1e-12 * scale);
  }
}

TEST(EigenSym, ZeroMultiplicityCountsComponents) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    const std::size_t parts = 1 + t % 3;
    std::vector<Edge> edges;
    std::size_t offset = 0;
    for (std::size_t p = 0; p < parts; ++p) {
      const std::size_t m = 2 + (t + p) % 4;
      const auto sub = testing::random_connected_graph(rng, m);
      for (const auto& e : sub.edges()) edges.push_back({e.i + offset, e.j + offset, e.conductance});
      offset += m;
    }
    const WeightedGraph g(offset, edges);
    ASSERT_EQ(component_count(g), parts);
    const auto ev = eigen_sym(laplacian(g)).eigenvalues;
    const auto zeros = std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x) < 1e-8; });
    ASSERT_EQ(static_cast<std::size_t>(zeros), parts);
  }
}

// -- Cholesky ----------------------------------------------------------------

TEST(SolveSpd, OneByOne) {
  const auto x = solve_spd(SymmetricMatrix{{2}}, Matrix{{4}});
  ASSERT_EQ(x.rows(), 1u);
  // two divisions by sqrt(2): within an ulp, not exact
  EXPECT_DOUBLE_EQ(x(0, 0), 2.0);
}

TEST(SolveSpd, HarmonicExtensionOfUnitTriangle) {
  // L = [[2]] and -J f0 = [c_{0,2}] = [1]: f(v_2) = 1/2.
  const auto x = solve_spd(SymmetricMatrix{{2}}, Matrix{{1}});
  EXPECT_DOUBLE_EQ(x(0, 0), 0.5);
}

TEST(SolveSpd, IndefiniteFailsAtSecondPivot) {
  try {
    solve_spd(SymmetricMatrix{{1, 2}, {2, 1}}, Matrix{{1}, {1}});
    FAIL() << "indefinite matrix factored";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.pivot(), 2u);
    EXPECT_DOUBLE_EQ(e.value(), -3.0);
  }
  EXPECT_THROW(CholeskyFactor(SymmetricMatrix{{0}}), NotPositiveDefinite);
}

TEST(SolveSpd, ResidualOnRandomSpd) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 12;
    const std::size_t k = 1 + t % 3;
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = u(rng);
    SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double s = i == j ? 1.0 : 0.0;
        for (std::size_t r = 0; r < n; ++r) s += g(r, i) * g(r, j);
        a.set(i, j, s);
      }
    }
    Matrix b(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < k; ++c) b(i, c) = u(rng);
    const auto x = solve_spd(a, b);
    const auto ax = a.multiply(x);
    double res = 0.0, bn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) {
        res += (ax(i, c) - b(i, c)) * (ax(i, c) - b(i, c));
        bn += b(i, c) * b(i, c);
      }
    }
    ASSERT_LE(std::sqrt(res), 1e-10 * std::sqrt(bn));
  }
}

TEST(SolveSpd, PivotRatio) {
  const double d[] = {1e-8, 1.0, 1e8};
  const CholeskyFactor f(SymmetricMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(f.pivot_ratio(), 1e16);
}

TEST(EigenSym, AgreesWithSturmBisectionIncludingMultiplicities) {
  const double ones[] = {1, 1, 1, 1, 1, 1};
  const auto unit = testing::laplacian_ld(cycle(ones));
  const double expect[] = {0, 1, 1, 3, 3, 4};
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_NEAR(static_cast<double>(testing::kth_eigenvalue(unit, k)), expect[k], 1e-15);
  }
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_connected_graph(rng, 3 + t % 8);
    const auto ev = eigen_sym(laplacian(g)).eigenvalues;
    const auto h = testing::laplacian_ld(g);
    for (std::size_t k = 0; k < ev.size(); ++k) {
      ASSERT_NEAR(ev[k], static_cast<double>(testing::kth_eigenvalue(h, k)), 1e-10 * ev.back());
    }
  }
}

}  // namespace
}  // namespace erm
