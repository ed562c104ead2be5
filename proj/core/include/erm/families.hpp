#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erm {

// A cycle instance of a parametrized family.
struct CyclePoint {
  std::string family;
  double parameter = 0.0;
  // Edge order (c_{0,1}, c_{1,2}, ..., c_{n-1,0}).
  std::vector<double> conductances;
  // Global resistance of the realized cycle.
  double rho = 0.0;
  // All n eigenvalues, ascending; eigenvalues[0] is the zero mode.
  std::vector<double> eigenvalues;
  // lambda_k * rho for k = 1..n-1.
  std::vector<double> products;

  double lambda1_rho() const { return products.front(); }
  double lambdamax_rho() const { return products.back(); }
};

// Evaluates spectrum, rho and products for a cycle. rho comes from the Schur
// route, not a closed form.
CyclePoint realize_cycle(std::string family, double parameter,
                         std::vector<double> conductances);

// A constant-rho family: all but one edge are functions of the parameter and
// the remaining edge is solved from target_rho.
struct FamilySpec {
  struct Fixed {
    std::size_t edge;
    std::function<double(double)> value;
  };

  std::string name;
  std::size_t n = 3;
  std::vector<Fixed> fixed;
  std::size_t solved_edge = 0;
  double target_rho = 2.0;

  // Throws InvalidArgument unless exactly the solved edge is left free.
  void validate() const;
  // Conductances in edge order; throws Infeasible when any is non-positive.
  std::vector<double> conductances(double parameter) const;
  CyclePoint realize(double parameter) const;
  bool feasible(double parameter) const;
};

// Largest sub-interval of [lo, hi] containing `inside` on which the family is
// feasible, located by bisection on the positivity of the conductances.
// Returns the closed-open boundary estimates (each within tol of the true
// boundary on the feasible side).
struct Interval {
  double lo;
  double hi;
};
Interval feasible_interval(const FamilySpec& spec, double inside, double lo,
                           double hi, double tol = 1e-12);

// -- the two-equal 3-cycle family ------------------------------------------

// Conductances (b(2-b)/(2b-1), b, b), rho = 2. Domain is the open interval
// (1/2, 2).
CyclePoint two_equal_family(double b);

struct TwoEqualEigenvalues {
  // Eigenvalue of (1, -1, 0): 3b / (2b - 1).
  double antisymmetric;
  // Eigenvalue of (1, 1, -2): 3b.
  double symmetric;
  double lambda1;
  double lambda2;
};
TwoEqualEigenvalues two_equal_eigenvalues(double b);

double two_equal_solved_conductance(double b);

// -- constraint solvers ------------------------------------------------------

// z with three_cycle_rho(z, x, y) == target_rho:
//   z = (rho x y - 2 (x + y)) / (2 - rho (x + y)).
double solve_third_conductance(double x, double y, double target_rho);

// Last conductance of an n-cycle (n = known.size() + 1) with the given global
// resistance. With resistances r = 1/c, S = sum r, P = sum r^2, the missing
// resistance is t = (rho S - S^2 + P) / (2 S - rho).
double solve_last_cycle_conductance(std::span<const double> known, double target_rho);

// -- the plotted families ----------------------------------------------------

enum class FigureId { kFig1, kFig2, kFig3, kFig4, kFig5 };

std::optional<FigureId> parse_figure_id(std::string_view s);
std::string_view figure_name(FigureId id);

// The family behind each plot, as a constant-rho spec:
//   fig1  3-cycle (solved, b, b),           rho 2
//   fig2  3-cycle (solved, 3/2, r),         rho 2
//   fig3  3-cycle (3/4, r, solved),         rho 2
//   fig4  4-cycle (solved, 1/c, c, 1),      rho 3
//   fig5  4-cycle (solved, 1/c, c, (c+1)/2), rho 3
const FamilySpec& figure_spec(FigureId id);

// Solver-realized point. Throws Infeasible outside the positivity domain.
CyclePoint figure_family(FigureId id, double parameter);

// The free conductance as printed in the plot captions, for families that
// have one (fig1..fig4). For fig2 and fig4 these do not satisfy the rho
// constraint; see caption_curve_point.
std::optional<double> caption_solved_conductance(FigureId id, double parameter);

// Point realized from the caption formula instead of the solver. Its rho is
// whatever the caption conductances produce.
std::optional<CyclePoint> caption_curve_point(FigureId id, double parameter);

// The 4-cycle conductance formula for c_{0,1} in terms of the other three when
// rho = 3:
//   (3 c12 c23 c30 - 2 s2) / (2 s1 - 3 s2),
// s1, s2 the elementary symmetric sums of (c12, c23, c30).
double four_cycle_c01_for_rho3(double c12, double c23, double c30);

}  // namespace erm
