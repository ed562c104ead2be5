#include "erm/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "erm/error.hpp"

namespace erm {

namespace {

void check_pair(const WeightedGraph& g, Vertex i, Vertex j) {
  const std::size_t n = g.vertex_count();
  if (i >= n || j >= n) {
    throw InvalidArgument("vertex pair (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") out of range for n = " + std::to_string(n));
  }
  if (i == j) throw InvalidArgument("effective resistance needs two distinct vertices");
  if (!is_connected(g)) throw DisconnectedGraph("graph is disconnected");
}

void check_positive(std::span<const double> c) {
  for (double x : c) {
    if (!(x > 0.0) || std::isinf(x)) {
      throw InvalidArgument("conductances must be positive and finite");
    }
  }
}

}  // namespace

ResistanceReport effective_resistance(const WeightedGraph& g, Vertex i, Vertex j) {
  check_pair(g, i, j);
  const std::size_t n = g.vertex_count();
  const SymmetricMatrix h = laplacian(g);

  // Relabel: the pair goes first, the interior keeps its original order.
  std::vector<std::size_t> interior;
  interior.reserve(n - 2);
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j) interior.push_back(k);

  // <(M - J^T L^-1 J) f_0, f_0> with f_0 = (1, 0) is the energy of the
  // harmonic extension f = (f_0, -L^-1 J f_0). Summing c (f_u - f_v)^2 over
  // edges avoids the cancellation in M - J^T L^-1 J when one conductance
  // dwarfs the rest, and errors in f enter only at second order.
  ResistanceReport report{i, j, 0.0, h(i, i)};
  if (!interior.empty()) {
    const SymmetricMatrix l = h.principal(interior);
    std::vector<double> rhs(interior.size());
    for (std::size_t r = 0; r < interior.size(); ++r) rhs[r] = -h(interior[r], i);

    const CholeskyFactor chol(l);
    const auto inner = chol.solve(rhs);
    std::vector<double> f(n, 0.0);
    f[i] = 1.0;
    for (std::size_t r = 0; r < interior.size(); ++r) f[interior[r]] = inner[r];
    report.energy_min = energy(g, f);
    report.pivot_ratio = chol.pivot_ratio();
    report.ill_conditioned = report.pivot_ratio > kIllConditionedPivotRatio;
  }
  if (!(report.energy_min > 0.0)) {
    throw NotPositiveDefinite(1, report.energy_min);
  }
  report.value = 1.0 / report.energy_min;
  return report;
}

double effective_resistance_oracle(const WeightedGraph& g, Vertex i, Vertex j) {
  check_pair(g, i, j);
  const std::size_t n = g.vertex_count();
  // Grounded Laplacian assembled straight from the edge list.
  auto reduced = [j](std::size_t v) { return v < j ? v : v - 1; };
  SymmetricMatrix grounded(n - 1);
  for (const auto& e : g.edges()) {
    if (e.i != j) grounded.add(reduced(e.i), reduced(e.i), e.conductance);
    if (e.j != j) grounded.add(reduced(e.j), reduced(e.j), e.conductance);
    if (e.i != j && e.j != j) grounded.set(reduced(e.i), reduced(e.j), -e.conductance);
  }
  std::vector<double> current(n - 1, 0.0);
  current[reduced(i)] = 1.0;
  const auto potential = CholeskyFactor(grounded).solve(current);
  return potential[reduced(i)];
}

double global_resistance(const WeightedGraph& g) {
  if (g.edge_count() == 0) throw InvalidArgument("global resistance needs at least one edge");
  if (!is_connected(g)) throw DisconnectedGraph("graph is disconnected");
  double rho = 0.0;
  for (const auto& e : g.edges()) rho += effective_resistance(g, e.i, e.j).value;
  return rho;
}

double three_cycle_rho(double c01, double c02, double c12) {
  const double c[] = {c01, c02, c12};
  check_positive(c);
  return 2.0 * (c01 + c02 + c12) / (c01 * c02 + c01 * c12 + c02 * c12);
}

double four_cycle_rho(double c01, double c12, double c23, double c30) {
  const double c[] = {c01, c12, c23, c30};
  check_positive(c);
  const double pairs = c01 * c12 + c01 * c23 + c01 * c30 + c12 * c23 + c12 * c30 + c23 * c30;
  const double triples = c01 * c12 * c23 + c01 * c12 * c30 + c01 * c23 * c30 + c12 * c23 * c30;
  return 2.0 * pairs / triples;
}

double cycle_rho_closed_form(std::span<const double> conductances) {
  if (conductances.size() < 3) throw InvalidArgument("a cycle needs at least 3 edges");
  check_positive(conductances);
  double total = 0.0;
  double squares = 0.0;
  for (double c : conductances) {
    const double r = 1.0 / c;
    total += r;
    squares += r * r;
  }
  return total - squares / total;
}

bool metric_check(const WeightedGraph& g) {
  if (!is_connected(g)) throw DisconnectedGraph("graph is disconnected");
  const std::size_t n = g.vertex_count();
  // Absolute at unit scale, relative for large resistances.
  constexpr double kSlack = 1e-10;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      d[a * n + b] = effective_resistance(g, a, b).value;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && !(d[a * n + b] > 0.0)) return false;
      const double ab = d[a * n + b];
      if (std::abs(ab - d[b * n + a]) > kSlack * std::max(1.0, ab)) return false;
      for (std::size_t c = 0; c < n; ++c) {
        const double ac = d[a * n + c];
        if (ac > ab + d[b * n + c] + kSlack * std::max(1.0, ac)) return false;
      }
    }
  }
  return true;
}

}  // namespace erm
