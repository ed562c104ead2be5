#pragma once

#include <span>

#include "erm/graph.hpp"

namespace erm {

// Pivot ratio of the interior block above which a result is flagged as
// ill-conditioned. The value is still returned.
inline constexpr double kIllConditionedPivotRatio = 1e14;

struct ResistanceReport {
  Vertex i;
  Vertex j;
  // d_r(v_i, v_j) = 1 / energy_min
  double value;
  // Energy of the harmonic extension of f(v_i) = 1, f(v_j) = 0.
  double energy_min;
  double pivot_ratio = 1.0;
  bool ill_conditioned = false;
};

// Schur complement route: relabel so (i, j) come first, split the Laplacian
// into M (2x2), J and L, and evaluate <(M - J^T L^-1 J) e_0, e_0>.
ResistanceReport effective_resistance(const WeightedGraph& g, Vertex i, Vertex j);

// Grounded solve: drop row/column j, inject unit current at i, read the
// potential at i. Shares no code path with the Schur route beyond the
// Cholesky solver.
double effective_resistance_oracle(const WeightedGraph& g, Vertex i, Vertex j);

// Sum of d_r over adjacent pairs only.
double global_resistance(const WeightedGraph& g);

// rho of the 3-cycle in terms of c_{0,1}, c_{0,2}, c_{1,2}.
double three_cycle_rho(double c01, double c02, double c12);

// rho of the 4-cycle from its four conductances:
//   2 * (sum of pairwise products) / (sum of triple products).
// The triple sum runs over all four triples.
double four_cycle_rho(double c01, double c12, double c23, double c30);

// Series-parallel closed form for any cycle, conductances in edge order.
// With r_e = 1/c_e and R = sum r_e, each edge contributes r_e (R - r_e) / R.
double cycle_rho_closed_form(std::span<const double> conductances);

// Symmetry and triangle inequality of d_r over all vertex triples, with
// absolute slack 1e-10.
bool metric_check(const WeightedGraph& g);

}  // namespace erm
