#include "erm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "erm/error.hpp"

namespace erm {

namespace {

std::string describe(const Edge& e) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << e.i << ", " << e.j << ", " << e.conductance << ")";
  return os.str();
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  if (n < 2) {
    throw InvalidArgument("graph needs at least 2 vertices, got " + std::to_string(n));
  }
  for (auto& e : edges) {
    if (e.i >= n || e.j >= n) {
      throw InvalidArgument("edge " + describe(e) + ": vertex index out of range for n = " +
                            std::to_string(n));
    }
    if (e.i == e.j) {
      throw InvalidArgument("edge " + describe(e) + ": loops are not allowed");
    }
    // Written negated so NaN is rejected as well.
    if (!(e.conductance > 0.0) || std::isinf(e.conductance)) {
      throw InvalidArgument("edge " + describe(e) + ": conductance must be positive and finite");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j) {
      throw InvalidArgument("edge " + describe(edges[k]) + ": duplicate vertex pair");
    }
  }
  edges_ = std::move(edges);
}

double WeightedGraph::conductance(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                             [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                               return e.i != key.first ? e.i < key.first : e.j < key.second;
                             });
  if (it != edges_.end() && it->i == u && it->j == v) return it->conductance;
  return 0.0;
}

WeightedGraph build_graph(std::size_t n, std::vector<Edge> edges) {
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph cycle(std::span<const double> conductances) {
  const std::size_t n = conductances.size();
  if (n < 3) {
    throw InvalidArgument("cycle needs at least 3 vertices, got " + std::to_string(n));
  }
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    edges.push_back({k, (k + 1) % n, conductances[k]});
  }
  return WeightedGraph(n, std::move(edges));
}

std::vector<double> cycle_conductances(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 3 || g.edge_count() != n) {
    throw InvalidArgument("graph is not a cycle");
  }
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = g.conductance(k, (k + 1) % n);
    if (c[k] == 0.0) throw InvalidArgument("graph is not the cycle 0-1-...-(n-1)-0");
  }
  return c;
}

SymmetricMatrix laplacian(const WeightedGraph& g) {
  SymmetricMatrix h(g.vertex_count());
  for (const auto& e : g.edges()) {
    h.add(e.i, e.i, e.conductance);
    h.add(e.j, e.j, e.conductance);
    h.set(e.i, e.j, -e.conductance);
  }
  return h;
}

double energy(const WeightedGraph& g, std::span<const double> f) {
  if (f.size() != g.vertex_count()) {
    throw InvalidArgument("vertex function has " + std::to_string(f.size()) +
                          " values, graph has " + std::to_string(g.vertex_count()) +
                          " vertices");
  }
  double e = 0.0;
  for (const auto& edge : g.edges()) {
    const double d = f[edge.i] - f[edge.j];
    e += edge.conductance * d * d;
  }
  return e;
}

WeightedGraph scale(const WeightedGraph& g, double alpha) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw InvalidArgument("scale factor must be positive and finite");
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.conductance *= alpha;
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

std::size_t component_count(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const auto& e : g.edges()) {
    const auto a = find(e.i);
    const auto b = find(e.j);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

bool is_connected(const WeightedGraph& g) { return component_count(g) == 1; }

}  // namespace erm
