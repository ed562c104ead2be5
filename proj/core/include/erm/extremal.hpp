#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "erm/families.hpp"

namespace erm {

// lambda_1 rho <= 6 <= lambda_2 rho on every weighted 3-cycle.
inline constexpr double kThreeCycleBound = 6.0;

struct TheoremReport {
  // (c_{0,1}, c_{0,2}, c_{1,2})
  std::array<double, 3> conductances;
  double rho;
  double lambda1_rho;
  double lambdamax_rho;
  bool lower_ok;
  bool upper_ok;
  bool equality;
};

// rho from the closed form, eigenvalues from eigen_sym. Flags use relative
// tolerance tol against the bound.
TheoremReport verify_theorem(std::span<const double> conductances, double tol = 1e-9);

struct CycleBaseline {
  std::size_t n;
  double lambda1;
  double lambdamax;
  double rho;
  // Largest deviation of the closed forms from eigen_sym / Schur route on the
  // realized unit cycle.
  double numeric_discrepancy;

  double low_product() const { return lambda1 * rho; }
  double high_product() const { return lambdamax * rho; }
};

// Unit n-cycle: lambda_k = 2 - 2 cos(2 pi k / n), rho = n - 1.
CycleBaseline unit_cycle_baseline(std::size_t n);

struct ScanResult {
  std::vector<CyclePoint> rows;
  std::size_t skipped = 0;
};

// Rows ordered by parameter. Infeasible grid points are skipped and counted;
// throws Infeasible if nothing is left.
ScanResult scan_family(const FamilySpec& spec, std::span<const double> grid);
ScanResult scan_family(FigureId id, std::span<const double> grid);

// -- monotonicity of the extreme eigenvalues along constant-rho curves -----

// All four use the 3-cycle {solved, b, r} with rho = 2.
//   kLemma43a  b >= 1, r >= b: lambda_2 increasing
//   kLemma43b  b <= 1, r <= b: lambda_2 decreasing
//   kLemma44a  b >= 1, r >= b: lambda_1 decreasing
//   kLemma44b  b <= 1, r <= b: lambda_1 increasing
enum class MonotonicityId { kLemma43a, kLemma43b, kLemma44a, kLemma44b };

std::optional<MonotonicityId> parse_monotonicity_id(std::string_view s);
FamilySpec lemma_family(double b);

struct MonotonicityResult {
  bool holds;
  // Most adverse successive difference, signed so that negative means the
  // expected direction was violated.
  double worst_margin;
  std::size_t points_used;
  std::size_t skipped;
};

inline constexpr double kMonotonicityTolerance = 1e-10;

MonotonicityResult monotonicity_check(MonotonicityId id, double b,
                                      std::span<const double> r_grid);

// `points` evenly spaced r values covering the regime of `id`, clipped to the
// numerically located feasibility interval.
std::vector<double> lemma_grid(MonotonicityId id, double b, std::size_t points);

// -- counterexample search -------------------------------------------------

inline constexpr double kCounterexampleThreshold = 1e-7;

struct SearchOptions {
  std::size_t n = 4;
  std::size_t restarts = 200;
  int iterations = 500;
  std::uint64_t seed = 0;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct RestartResult {
  std::size_t index;
  double max_product;
  std::vector<double> max_conductances;
  double min_product;
  std::vector<double> min_conductances;
  bool max_converged;
  bool min_converged;
};

struct SearchReport {
  std::size_t n;
  std::size_t trials;
  std::uint64_t seed;
  double baseline_low;
  double baseline_high;
  double best_max_product;
  std::vector<double> best_max_conductances;
  double best_min_product;
  std::vector<double> best_min_conductances;
  bool counterexample;
  // Largest relative violation of either side; negative when none.
  double margin;
  std::vector<RestartResult> restarts;
};

// Maximizes lambda_1 rho and minimizes lambda_{n-1} rho over n-cycle
// conductances with Nelder-Mead in log-conductance space (coordinate 0
// pinned to 0). Each restart draws its start from its own stream seeded by
// (seed, restart index), so the report is independent of scheduling.
SearchReport search_counterexample(const SearchOptions& options);

// lambda_1 rho and lambda_{n-1} rho of the cycle exp(0, log_c...).
struct ProductPair {
  double low;
  double high;
};
ProductPair cycle_products(std::span<const double> conductances);

}  // namespace erm
