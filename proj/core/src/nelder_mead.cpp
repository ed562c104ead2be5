#include "erm/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "erm/error.hpp"

namespace erm {

namespace {

using Point = std::vector<double>;

Point affine(const Point& base, const Point& toward, double t) {
  Point out(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) out[k] = base[k] + t * (toward[k] - base[k]);
  return out;
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, const NelderMeadOptions& opt) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw InvalidArgument("nelder_mead: empty starting point");
  if (opt.max_iterations < 0) throw InvalidArgument("nelder_mead: negative iteration budget");

  int evaluations = 0;
  auto eval = [&](const Point& x) {
    ++evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Point> simplex(dim + 1, Point(x0.begin(), x0.end()));
  for (std::size_t k = 0; k < dim; ++k) simplex[k + 1][k] += opt.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) values[k] = eval(simplex[k]);

  std::vector<std::size_t> order(dim + 1);
  int iterations = 0;
  bool converged = false;
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t k = 0; k <= dim; ++k)
      diameter = std::max(diameter, distance(simplex[k], simplex[best]));
    if (diameter < opt.diameter_tol) {
      converged = true;
      break;
    }
    if (iterations == opt.max_iterations) break;
    ++iterations;

    Point centroid(dim, 0.0);
    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == worst) continue;
      for (std::size_t c = 0; c < dim; ++c) centroid[c] += simplex[k][c];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const Point reflected = affine(centroid, simplex[worst], -opt.reflection);
    const double f_reflected = eval(reflected);

    if (f_reflected < values[best]) {
      const Point expanded = affine(centroid, reflected, opt.expansion);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < values[worst];
    const Point contracted =
        affine(centroid, outside ? reflected : simplex[worst], opt.contraction);
    const double f_contracted = eval(contracted);
    if (outside ? f_contracted <= f_reflected : f_contracted < values[worst]) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }

    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == best) continue;
      simplex[k] = affine(simplex[best], simplex[k], opt.shrink);
      values[k] = eval(simplex[k]);
    }
  }

  const std::size_t best = order.front();
  return {simplex[best], values[best], iterations, evaluations, converged};
}

}  // namespace erm
