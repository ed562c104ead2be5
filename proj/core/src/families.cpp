#include "erm/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "erm/dense.hpp"
#include "erm/error.hpp"
#include "erm/graph.hpp"
#include "erm/resistance.hpp"

namespace erm {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool positive_finite(double x) { return x > 0.0 && !std::isinf(x); }

}  // namespace

CyclePoint realize_cycle(std::string family, double parameter, std::vector<double> conductances) {
  const WeightedGraph g = cycle(conductances);
  CyclePoint p;
  p.family = std::move(family);
  p.parameter = parameter;
  p.rho = global_resistance(g);
  p.eigenvalues = eigen_sym(laplacian(g)).eigenvalues;
  p.products.reserve(p.eigenvalues.size() - 1);
  for (std::size_t k = 1; k < p.eigenvalues.size(); ++k) {
    p.products.push_back(p.eigenvalues[k] * p.rho);
  }
  p.conductances = std::move(conductances);
  return p;
}

// -- FamilySpec --------------------------------------------------------------

void FamilySpec::validate() const {
  if (n < 3) throw InvalidArgument("family '" + name + "': cycle length must be at least 3");
  if (!(target_rho > 0.0)) throw InvalidArgument("family '" + name + "': target rho must be > 0");
  if (solved_edge >= n) throw InvalidArgument("family '" + name + "': solved edge out of range");
  std::vector<bool> seen(n, false);
  for (const auto& f : fixed) {
    if (f.edge >= n || f.edge == solved_edge || seen[f.edge]) {
      throw InvalidArgument("family '" + name + "': fixed edges must cover every edge but the " +
                            "solved one exactly once");
    }
    seen[f.edge] = true;
  }
  if (fixed.size() != n - 1) {
    throw InvalidArgument("family '" + name + "': exactly one edge must be solved");
  }
}

std::vector<double> FamilySpec::conductances(double parameter) const {
  validate();
  std::vector<double> c(n, 0.0);
  std::vector<double> known;
  known.reserve(n - 1);
  for (const auto& f : fixed) {
    const double v = f.value(parameter);
    if (!positive_finite(v)) {
      throw Infeasible("family '" + name + "' at " + fmt(parameter) + ": edge " +
                       std::to_string(f.edge) + " has conductance " + fmt(v));
    }
    c[f.edge] = v;
    known.push_back(v);
  }
  try {
    c[solved_edge] = solve_last_cycle_conductance(known, target_rho);
  } catch (const Infeasible& e) {
    throw Infeasible("family '" + name + "' at " + fmt(parameter) + ": " + e.what());
  }
  return c;
}

CyclePoint FamilySpec::realize(double parameter) const {
  return realize_cycle(name, parameter, conductances(parameter));
}

bool FamilySpec::feasible(double parameter) const {
  try {
    (void)conductances(parameter);
    return true;
  } catch (const Infeasible&) {
    return false;
  }
}

Interval feasible_interval(const FamilySpec& spec, double inside, double lo, double hi,
                           double tol) {
  if (!(lo <= inside && inside <= hi)) {
    throw InvalidArgument("feasible_interval: starting point outside [lo, hi]");
  }
  if (!spec.feasible(inside)) {
    throw Infeasible("family '" + spec.name + "' is infeasible at " + fmt(inside));
  }
  auto boundary = [&](double good, double bad) {
    if (spec.feasible(bad)) return bad;
    while (std::abs(bad - good) > tol) {
      const double mid = 0.5 * (good + bad);
      if (mid == good || mid == bad) break;
      (spec.feasible(mid) ? good : bad) = mid;
    }
    return good;
  };
  return {boundary(inside, lo), boundary(inside, hi)};
}

// -- two-equal family --------------------------------------------------------

namespace {

void check_two_equal_domain(double b) {
  if (!(b > 0.5 && b < 2.0)) {
    throw InvalidArgument("two-equal family needs 1/2 < b < 2, got " + fmt(b));
  }
}

}  // namespace

double two_equal_solved_conductance(double b) {
  check_two_equal_domain(b);
  return b * (2.0 - b) / (2.0 * b - 1.0);
}

CyclePoint two_equal_family(double b) {
  return realize_cycle("two_equal", b, {two_equal_solved_conductance(b), b, b});
}

TwoEqualEigenvalues two_equal_eigenvalues(double b) {
  check_two_equal_domain(b);
  const double anti = 3.0 * b / (2.0 * b - 1.0);
  const double sym = 3.0 * b;
  return {anti, sym, std::min(anti, sym), std::max(anti, sym)};
}

// -- constraint solvers ------------------------------------------------------

double solve_third_conductance(double x, double y, double target_rho) {
  if (!positive_finite(x) || !positive_finite(y) || !positive_finite(target_rho)) {
    throw InvalidArgument("solve_third_conductance: inputs must be positive");
  }
  const double den = 2.0 - target_rho * (x + y);
  const double num = target_rho * x * y - 2.0 * (x + y);
  if (std::abs(den) <= 1e-14 * std::max(2.0, target_rho * (x + y))) {
    throw Infeasible("infeasible pair for target rho: x = " + fmt(x) + ", y = " + fmt(y) +
                     ", rho = " + fmt(target_rho) + " (degenerate denominator)");
  }
  const double z = num / den;
  if (!positive_finite(z)) {
    throw Infeasible("infeasible pair for target rho: x = " + fmt(x) + ", y = " + fmt(y) +
                     ", rho = " + fmt(target_rho) + " gives z = " + fmt(z));
  }
  return z;
}

double solve_last_cycle_conductance(std::span<const double> known, double target_rho) {
  if (known.size() < 2) throw InvalidArgument("a cycle needs at least 2 known conductances");
  if (!positive_finite(target_rho)) throw InvalidArgument("target rho must be positive");
  double s = 0.0;
  double p = 0.0;
  for (double c : known) {
    if (!positive_finite(c)) throw InvalidArgument("known conductances must be positive");
    s += 1.0 / c;
    p += 1.0 / (c * c);
  }
  const double den = 2.0 * s - target_rho;
  if (std::abs(den) <= 1e-14 * std::max(2.0 * s, target_rho)) {
    throw Infeasible("infeasible for target rho " + fmt(target_rho) +
                     ": 2S - rho vanishes (S = " + fmt(s) + ")");
  }
  const double t = (target_rho * s - s * s + p) / den;
  if (!positive_finite(t)) {
    throw Infeasible("infeasible for target rho " + fmt(target_rho) + ": S = " + fmt(s) +
                     ", P = " + fmt(p) + " gives resistance " + fmt(t));
  }
  return 1.0 / t;
}

double four_cycle_c01_for_rho3(double c12, double c23, double c30) {
  const double s1 = c12 + c23 + c30;
  const double s2 = c12 * c23 + c12 * c30 + c23 * c30;
  const double s3 = c12 * c23 * c30;
  return (3.0 * s3 - 2.0 * s2) / (2.0 * s1 - 3.0 * s2);
}

// -- figure families ---------------------------------------------------------

std::optional<FigureId> parse_figure_id(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, FigureId>, 5> kNames{{
      {"fig1", FigureId::kFig1},
      {"fig2", FigureId::kFig2},
      {"fig3", FigureId::kFig3},
      {"fig4", FigureId::kFig4},
      {"fig5", FigureId::kFig5},
  }};
  for (const auto& [name, id] : kNames)
    if (name == s) return id;
  return std::nullopt;
}

std::string_view figure_name(FigureId id) {
  switch (id) {
    case FigureId::kFig1: return "fig1";
    case FigureId::kFig2: return "fig2";
    case FigureId::kFig3: return "fig3";
    case FigureId::kFig4: return "fig4";
    case FigureId::kFig5: return "fig5";
  }
  return "?";
}

const FamilySpec& figure_spec(FigureId id) {
  auto identity = [](double t) { return t; };
  auto constant = [](double v) { return [v](double) { return v; }; };
  auto inverse = [](double t) { return 1.0 / t; };

  static const std::array<FamilySpec, 5> kSpecs{{
      {"fig1", 3, {{1, identity}, {2, identity}}, 0, 2.0},
      {"fig2", 3, {{1, constant(1.5)}, {2, identity}}, 0, 2.0},
      {"fig3", 3, {{0, constant(0.75)}, {1, identity}}, 2, 2.0},
      {"fig4", 4, {{1, inverse}, {2, identity}, {3, constant(1.0)}}, 0, 3.0},
      {"fig5", 4, {{1, inverse}, {2, identity}, {3, [](double c) { return 0.5 * (c + 1.0); }}}, 0,
       3.0},
  }};
  return kSpecs[static_cast<std::size_t>(id)];
}

CyclePoint figure_family(FigureId id, double parameter) {
  return figure_spec(id).realize(parameter);
}

std::optional<double> caption_solved_conductance(FigureId id, double t) {
  switch (id) {
    case FigureId::kFig1: return t * (2.0 - t) / (2.0 * t - 1.0);
    case FigureId::kFig2: return (3.0 - t) / (t + 1.0);
    case FigureId::kFig3: return (t + 3.0) / (4.0 * t - 1.0);
    case FigureId::kFig4: return (1.0 + t * t - t) / (1.0 + t * t + t);
    case FigureId::kFig5: return std::nullopt;  // caption repeats fig4's
  }
  return std::nullopt;
}

std::optional<CyclePoint> caption_curve_point(FigureId id, double parameter) {
  const auto solved = caption_solved_conductance(id, parameter);
  if (!solved) return std::nullopt;
  const FamilySpec& spec = figure_spec(id);
  std::vector<double> c(spec.n, 0.0);
  c[spec.solved_edge] = *solved;
  for (const auto& f : spec.fixed) c[f.edge] = f.value(parameter);
  for (double x : c) {
    if (!positive_finite(x)) {
      throw Infeasible("caption curve of " + spec.name + " infeasible at " + fmt(parameter));
    }
  }
  return realize_cycle(spec.name + "_caption", parameter, std::move(c));
}

}  // namespace erm
