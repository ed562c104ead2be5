#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace erm {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  // Stop once the largest vertex distance from the best vertex drops below
  // this.
  double diameter_tol = 1e-9;
  int max_iterations = 500;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int iterations;
  int evaluations;
  bool converged;
};

// Minimizes f from x0. NaN values are treated as +infinity. Deterministic:
// ties keep the earlier vertex.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace erm
