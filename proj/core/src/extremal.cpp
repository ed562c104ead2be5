#include "erm/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "erm/dense.hpp"
#include "erm/error.hpp"
#include "erm/graph.hpp"
#include "erm/nelder_mead.hpp"
#include "erm/resistance.hpp"

namespace erm {

TheoremReport verify_theorem(std::span<const double> c, double tol) {
  if (c.size() != 3) throw InvalidArgument("verify_theorem needs exactly 3 conductances");
  if (!(tol > 0.0)) throw InvalidArgument("verify_theorem: tolerance must be positive");
  const double rho = three_cycle_rho(c[0], c[1], c[2]);
  const WeightedGraph g = build_graph(3, {{0, 1, c[0]}, {0, 2, c[1]}, {1, 2, c[2]}});
  const auto ev = eigen_sym(laplacian(g)).eigenvalues;

  TheoremReport r;
  r.conductances = {c[0], c[1], c[2]};
  r.rho = rho;
  r.lambda1_rho = ev[1] * rho;
  r.lambdamax_rho = ev[2] * rho;
  r.lower_ok = r.lambda1_rho <= kThreeCycleBound * (1.0 + tol);
  r.upper_ok = r.lambdamax_rho >= kThreeCycleBound * (1.0 - tol);
  r.equality = std::abs(r.lambda1_rho - kThreeCycleBound) <= kThreeCycleBound * tol &&
               std::abs(r.lambdamax_rho - kThreeCycleBound) <= kThreeCycleBound * tol;
  return r;
}

CycleBaseline unit_cycle_baseline(std::size_t n) {
  if (n < 3) throw InvalidArgument("unit cycle baseline needs n >= 3");
  const double nn = static_cast<double>(n);
  CycleBaseline b;
  b.n = n;
  b.lambda1 = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / nn);
  b.lambdamax = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n / 2) / nn);
  b.rho = nn - 1.0;

  const std::vector<double> ones(n, 1.0);
  const WeightedGraph g = cycle(ones);
  const auto ev = eigen_sym(laplacian(g)).eigenvalues;
  b.numeric_discrepancy = std::max({std::abs(ev[1] - b.lambda1), std::abs(ev.back() - b.lambdamax),
                                    std::abs(global_resistance(g) - b.rho)});
  return b;
}

// -- scans -------------------------------------------------------------------

ScanResult scan_family(const FamilySpec& spec, std::span<const double> grid) {
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  ScanResult out;
  for (double t : sorted) {
    try {
      out.rows.push_back(spec.realize(t));
    } catch (const Infeasible&) {
      ++out.skipped;
    }
  }
  if (out.rows.empty()) {
    throw Infeasible("family '" + spec.name + "' has no feasible point on the grid");
  }
  return out;
}

ScanResult scan_family(FigureId id, std::span<const double> grid) {
  return scan_family(figure_spec(id), grid);
}

// -- monotonicity ------------------------------------------------------------

std::optional<MonotonicityId> parse_monotonicity_id(std::string_view s) {
  if (s == "lemma43a") return MonotonicityId::kLemma43a;
  if (s == "lemma43b") return MonotonicityId::kLemma43b;
  if (s == "lemma44a") return MonotonicityId::kLemma44a;
  if (s == "lemma44b") return MonotonicityId::kLemma44b;
  return std::nullopt;
}

FamilySpec lemma_family(double b) {
  if (!(b > 0.0) || std::isinf(b)) throw InvalidArgument("lemma family needs b > 0");
  return {"lemma_b" + std::to_string(b), 3,
          {{1, [b](double) { return b; }}, {2, [](double r) { return r; }}}, 0, 2.0};
}

namespace {

struct LemmaShape {
  bool large_b;      // b >= 1 and r >= b, otherwise b <= 1 and r <= b
  std::size_t index;  // eigenvalue index tracked (1 or 2)
  bool increasing;
};

LemmaShape shape(MonotonicityId id) {
  switch (id) {
    case MonotonicityId::kLemma43a: return {true, 2, true};
    case MonotonicityId::kLemma43b: return {false, 2, false};
    case MonotonicityId::kLemma44a: return {true, 1, false};
    case MonotonicityId::kLemma44b: return {false, 1, true};
  }
  return {true, 2, true};
}

void check_regime(const LemmaShape& s, double b) {
  if (s.large_b ? !(b >= 1.0) : !(b > 0.0 && b <= 1.0)) {
    throw InvalidArgument(std::string("b = ") + std::to_string(b) + " is outside the regime " +
                          (s.large_b ? "b >= 1" : "0 < b <= 1"));
  }
}

}  // namespace

MonotonicityResult monotonicity_check(MonotonicityId id, double b,
                                      std::span<const double> r_grid) {
  const LemmaShape s = shape(id);
  check_regime(s, b);
  const FamilySpec spec = lemma_family(b);

  std::vector<double> grid(r_grid.begin(), r_grid.end());
  std::sort(grid.begin(), grid.end());
  for (double r : grid) {
    if (s.large_b ? !(r >= b) : !(r > 0.0 && r <= b)) {
      throw InvalidArgument("grid point r = " + std::to_string(r) + " outside the regime " +
                            (s.large_b ? "r >= b" : "0 < r <= b"));
    }
  }

  MonotonicityResult res{true, std::numeric_limits<double>::infinity(), 0, 0};
  std::optional<double> prev;
  for (double r : grid) {
    std::vector<double> c;
    try {
      c = spec.conductances(r);
    } catch (const Infeasible&) {
      ++res.skipped;
      continue;
    }
    const double lambda = eigenvalues_sym(laplacian(cycle(c)))[s.index];
    if (prev) {
      const double d = lambda - *prev;
      res.worst_margin = std::min(res.worst_margin, s.increasing ? d : -d);
    }
    prev = lambda;
    ++res.points_used;
  }
  if (res.points_used < 2) {
    throw Infeasible("monotonicity grid has fewer than two feasible points");
  }
  res.holds = res.worst_margin >= -kMonotonicityTolerance;
  return res;
}

std::vector<double> lemma_grid(MonotonicityId id, double b, std::size_t points) {
  const LemmaShape s = shape(id);
  check_regime(s, b);
  if (points < 2) throw InvalidArgument("lemma_grid needs at least 2 points");
  const FamilySpec spec = lemma_family(b);

  // Keep a small gap to the boundary where the solved conductance vanishes.
  constexpr double kGap = 1e-3;
  double lo;
  double hi;
  if (s.large_b) {
    const Interval iv = feasible_interval(spec, b, b, 1e3 * b);
    lo = b;
    hi = iv.hi - kGap * (iv.hi - b);
  } else {
    const Interval iv = feasible_interval(spec, b, 0.0, b);
    lo = iv.lo + kGap * (b - iv.lo);
    hi = b;
  }
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  grid.back() = hi;
  return grid;
}

// -- counterexample search ---------------------------------------------------

ProductPair cycle_products(std::span<const double> conductances) {
  const auto ev = eigenvalues_sym(laplacian(cycle(conductances)));
  const double rho = cycle_rho_closed_form(conductances);
  return {ev[1] * rho, ev.back() * rho};
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> to_conductances(std::span<const double> free_logs) {
  std::vector<double> c(free_logs.size() + 1);
  c[0] = 1.0;
  for (std::size_t k = 0; k < free_logs.size(); ++k) c[k + 1] = std::exp(free_logs[k]);
  return c;
}

// Products at exp(0, x); NaN when the point leaves floating range or the
// eigensolver fails.
ProductPair products_at(std::span<const double> free_logs) {
  const auto c = to_conductances(free_logs);
  for (double x : c) {
    if (!(x > 0.0) || std::isinf(x)) return {kNaN, kNaN};
  }
  try {
    return cycle_products(c);
  } catch (const Error&) {
    return {kNaN, kNaN};
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

RestartResult run_restart(const SearchOptions& opt, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const std::size_t dim = opt.n - 1;
  auto draw = [&] {
    std::vector<double> x(dim);
    for (double& v : x) v = -3.0 + 6.0 * uniform01(rng);
    return x;
  };
  const auto start_max = draw();
  const auto start_min = draw();

  NelderMeadOptions nm;
  nm.max_iterations = opt.iterations;

  const auto hi = nelder_mead([](std::span<const double> x) { return -products_at(x).low; },
                              start_max, nm);
  const auto lo = nelder_mead([](std::span<const double> x) { return products_at(x).high; },
                              start_min, nm);

  RestartResult r;
  r.index = index;
  r.max_conductances = to_conductances(hi.x);
  r.max_product = products_at(hi.x).low;
  r.min_conductances = to_conductances(lo.x);
  r.min_product = products_at(lo.x).high;
  r.max_converged = hi.converged;
  r.min_converged = lo.converged;
  return r;
}

}  // namespace

SearchReport search_counterexample(const SearchOptions& opt) {
  if (opt.n < 3) throw InvalidArgument("search needs n >= 3");
  if (opt.restarts < 1) throw InvalidArgument("search needs at least one restart");
  if (opt.iterations < 1) throw InvalidArgument("search needs at least one iteration per restart");

  std::vector<RestartResult> results(opt.restarts);
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, opt.restarts));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned w) {
    try {
      for (std::size_t k = next++; k < opt.restarts; k = next++) results[k] = run_restart(opt, k);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const CycleBaseline base = unit_cycle_baseline(opt.n);
  SearchReport rep;
  rep.n = opt.n;
  rep.trials = opt.restarts;
  rep.seed = opt.seed;
  rep.baseline_low = base.low_product();
  rep.baseline_high = base.high_product();
  rep.best_max_product = -std::numeric_limits<double>::infinity();
  rep.best_min_product = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.max_product > rep.best_max_product) {
      rep.best_max_product = r.max_product;
      rep.best_max_conductances = r.max_conductances;
    }
    if (r.min_product < rep.best_min_product) {
      rep.best_min_product = r.min_product;
      rep.best_min_conductances = r.min_conductances;
    }
  }
  rep.counterexample =
      rep.best_max_product > rep.baseline_low * (1.0 + kCounterexampleThreshold) ||
      rep.best_min_product < rep.baseline_high * (1.0 - kCounterexampleThreshold);
  rep.margin = std::max((rep.best_max_product - rep.baseline_low) / rep.baseline_low,
                        (rep.baseline_high - rep.best_min_product) / rep.baseline_high);
  rep.restarts = std::move(results);
  return rep;
}

}  // namespace erm
