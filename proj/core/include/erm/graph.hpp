#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "erm/dense.hpp"

namespace erm {

using Vertex = std::size_t;

struct Edge {
  Vertex i;
  Vertex j;
  double conductance;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A finite simple undirected graph with positive edge conductances.
//
// Edges are stored canonically (i < j, sorted by (i, j), no duplicates).
// Absent pairs have conductance zero. Instances are immutable once built.
class WeightedGraph {
 public:
  // Validates and canonicalizes. Throws InvalidArgument naming the offending
  // entry for out-of-range indices, loops, non-positive conductances and
  // duplicate pairs.
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  // Conductance between u and v, 0 when not adjacent.
  double conductance(Vertex u, Vertex v) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

WeightedGraph build_graph(std::size_t n, std::vector<Edge> edges);

// n-cycle whose edge k joins v_k and v_{k+1 mod n}; conductances are given in
// edge order (c_{0,1}, c_{1,2}, ..., c_{n-1,0}).
WeightedGraph cycle(std::span<const double> conductances);

// Inverse of cycle(): conductances of a cycle graph in edge order. Throws
// InvalidArgument if g is not the n-cycle on 0..n-1.
std::vector<double> cycle_conductances(const WeightedGraph& g);

SymmetricMatrix laplacian(const WeightedGraph& g);

// E(f) = sum over edges of c_ij (f_i - f_j)^2.
double energy(const WeightedGraph& g, std::span<const double> f);

WeightedGraph scale(const WeightedGraph& g, double alpha);

bool is_connected(const WeightedGraph& g);

// Number of connected components (isolated vertices count as components).
std::size_t component_count(const WeightedGraph& g);

}  // namespace erm
