#include "cli/commands.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "erm/dense.hpp"
#include "erm/error.hpp"
#include "erm/extremal.hpp"
#include "erm/families.hpp"
#include "erm/graph.hpp"
#include "erm/graph_io.hpp"
#include "erm/resistance.hpp"

namespace erm::cli {

std::string format_short(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

std::string format_full(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

struct Config {
  std::string command;
  std::string graph_path;
  std::size_t vertex_i = 0;
  std::size_t vertex_j = 0;
  std::vector<double> conductances;
  std::string family;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
  double b = 0.0;
  std::size_t n = 0;
  std::size_t restarts = 200;
  int iters = 500;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<double> tol;
  std::string out_path;
};

// Thrown for option values CLI11 accepts syntactically but the command does
// not.
struct UsageError : Error {
  using Error::Error;
};

std::string join(std::span<const double> xs, const char* sep, std::string (*f)(double)) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += sep;
    s += f(xs[k]);
  }
  return s;
}

// -- resistance / rho / spectrum ---------------------------------------------

int cmd_resistance(const Config& cfg, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = read_edge_list(cfg.graph_path);
  const auto rep = effective_resistance(g, cfg.vertex_i, cfg.vertex_j);
  out << format_short(rep.value) << '\n';
  out << "energy_min " << format_short(rep.energy_min) << '\n';
  if (rep.ill_conditioned) {
    err << "warning: interior block is ill-conditioned (pivot ratio "
        << format_short(rep.pivot_ratio) << ")\n";
  }
  return kSuccess;
}

int cmd_rho(const Config& cfg, std::ostream& out, std::ostream&) {
  const WeightedGraph g = read_edge_list(cfg.graph_path);
  out << format_short(global_resistance(g)) << '\n';
  return kSuccess;
}

int cmd_spectrum(const Config& cfg, std::ostream& out, std::ostream&) {
  const WeightedGraph g = read_edge_list(cfg.graph_path);
  const auto spec = eigen_sym(laplacian(g), cfg.tol.value_or(kDefaultEigenTolerance));
  double scale = 0.0;
  for (double v : spec.eigenvalues) scale = std::max(scale, std::abs(v));
  for (double v : spec.eigenvalues) {
    // Round-off around the zero mode prints as 0.
    out << format_short(std::abs(v) <= 1e-10 * scale ? 0.0 : v) << '\n';
  }
  return kSuccess;
}

// -- verify ------------------------------------------------------------------

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream&) {
  for (double c : cfg.conductances) {
    if (!(c > 0.0) || std::isinf(c)) throw UsageError("conductances must be positive");
  }
  const auto rep = verify_theorem(cfg.conductances, cfg.tol.value_or(1e-9));
  const char* status = rep.equality                     ? "EQUALITY"
                       : (rep.lower_ok && rep.upper_ok) ? "OK"
                                                        : "VIOLATION";
  out << "λ1ρ=" << format_short(rep.lambda1_rho) << " λ2ρ=" << format_short(rep.lambdamax_rho)
      << ' ' << status << '\n';
  return rep.lower_ok && rep.upper_ok ? kSuccess : kCounterexample;
}

// -- figure ------------------------------------------------------------------

void write_csv_header(std::ostream& os, std::size_t n) {
  os << "param";
  for (std::size_t k = 0; k < n; ++k) os << ",c_" << k << '_' << (k + 1) % n;
  os << ",rho";
  for (std::size_t k = 1; k < n; ++k) os << ",lambda_" << k;
  os << ",lambda1_rho,lambdamax_rho\n";
}

void write_csv_row(std::ostream& os, const CyclePoint& p) {
  os << format_full(p.parameter);
  for (double c : p.conductances) os << ',' << format_full(c);
  os << ',' << format_full(p.rho);
  for (std::size_t k = 1; k < p.eigenvalues.size(); ++k) os << ',' << format_full(p.eigenvalues[k]);
  os << ',' << format_full(p.lambda1_rho()) << ',' << format_full(p.lambdamax_rho()) << '\n';
}

std::filesystem::path caption_path(const std::filesystem::path& out) {
  auto p = out;
  p.replace_filename(out.stem().string() + "_caption" + out.extension().string());
  return p;
}

int cmd_figure(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto id = parse_figure_id(cfg.family);
  if (!id) throw UsageError("unknown figure id '" + cfg.family + "' (fig1..fig5)");
  if (!(cfg.lo < cfg.hi) || cfg.steps < 2 || !std::isfinite(cfg.hi) || !std::isfinite(cfg.lo)) {
    throw UsageError("figure range needs lo < hi and steps >= 2");
  }
  std::vector<double> grid(cfg.steps);
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    grid[k] = cfg.lo + (cfg.hi - cfg.lo) * static_cast<double>(k) /
                           static_cast<double>(cfg.steps - 1);
  }
  grid.back() = cfg.hi;

  const FamilySpec& spec = figure_spec(*id);
  ScanResult scan;
  try {
    scan = scan_family(spec, grid);
  } catch (const Infeasible& e) {
    throw UsageError(e.what());
  }

  // Caption curve, realized on the same grid for comparison.
  std::vector<CyclePoint> caption_rows;
  std::size_t caption_skipped = 0;
  double caption_rho_dev = 0.0;
  double caption_c_dev = 0.0;
  const bool has_caption = caption_solved_conductance(*id, grid.front()).has_value();
  if (has_caption) {
    for (double t : grid) {
      try {
        auto p = *caption_curve_point(*id, t);
        caption_rho_dev = std::max(caption_rho_dev, std::abs(p.rho - spec.target_rho) / spec.target_rho);
        if (spec.feasible(t)) {
          const double solved = spec.conductances(t)[spec.solved_edge];
          caption_c_dev = std::max(caption_c_dev, std::abs(p.conductances[spec.solved_edge] - solved) /
                                                      solved);
        }
        caption_rows.push_back(std::move(p));
      } catch (const Infeasible&) {
        ++caption_skipped;
      }
    }
  }

  std::ostringstream note;
  if (has_caption) {
    note << "caption formula for " << spec.name << ": max relative rho deviation "
         << format_short(caption_rho_dev) << ", max relative deviation from solver "
         << format_short(caption_c_dev)
         << (caption_rho_dev > 1e-10 ? " (caption curve is not constant-rho; solver curve is "
                                       "authoritative)"
                                     : " (agrees with solver)");
  }

  auto emit_main = [&](std::ostream& os) {
    os.precision(17);
    write_csv_header(os, spec.n);
    for (const auto& row : scan.rows) write_csv_row(os, row);
    if (has_caption) os << "# " << note.str() << '\n';
    os << "# skipped " << scan.skipped << " infeasible grid points\n";
  };
  auto emit_caption = [&](std::ostream& os) {
    write_csv_header(os, spec.n);
    for (const auto& row : caption_rows) write_csv_row(os, row);
    os << "# " << note.str() << '\n';
    os << "# skipped " << caption_skipped << " infeasible grid points\n";
  };

  if (cfg.out_path.empty()) {
    emit_main(out);
    if (has_caption && !caption_rows.empty()) {
      out << "# caption curve\n";
      emit_caption(out);
    }
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw UsageError("cannot write '" + cfg.out_path + "'");
    emit_main(f);
    if (has_caption && !caption_rows.empty()) {
      const auto cp = caption_path(cfg.out_path);
      std::ofstream g(cp);
      if (!g) throw UsageError("cannot write '" + cp.string() + "'");
      emit_caption(g);
    }
    out << "wrote " << scan.rows.size() << " rows to " << cfg.out_path << '\n';
  }
  if (has_caption) err << note.str() << '\n';
  if (scan.skipped) err << "skipped " << scan.skipped << " infeasible grid points\n";
  return kSuccess;
}

// -- monotone / baseline -------------------------------------------------------

int cmd_monotone(const Config& cfg, std::ostream& out, std::ostream&) {
  const auto id = parse_monotonicity_id(cfg.family);
  if (!id) throw UsageError("unknown lemma id '" + cfg.family + "'");
  const auto grid = lemma_grid(*id, cfg.b, cfg.steps ? cfg.steps : 500);
  const auto res = monotonicity_check(*id, cfg.b, grid);
  out << (res.holds ? "true" : "false") << " worst_margin " << format_short(res.worst_margin)
      << " points " << res.points_used << " r_range " << format_short(grid.front()) << ' '
      << format_short(grid.back()) << '\n';
  return res.holds ? kSuccess : kCounterexample;
}

int cmd_baseline(const Config& cfg, std::ostream& out, std::ostream&) {
  const auto b = unit_cycle_baseline(cfg.n);
  out << "lambda1 " << format_short(b.lambda1) << '\n'
      << "lambdamax " << format_short(b.lambdamax) << '\n'
      << "rho " << format_short(b.rho) << '\n'
      << "lambda1_rho " << format_short(b.low_product()) << '\n'
      << "lambdamax_rho " << format_short(b.high_product()) << '\n';
  return kSuccess;
}

// -- search ------------------------------------------------------------------

int cmd_search(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 3) throw UsageError("search needs n >= 3");
  if (cfg.restarts < 1) throw UsageError("invalid restarts: need at least 1");
  if (cfg.iters < 1) throw UsageError("invalid iters: need at least 1");
  SearchOptions opt;
  opt.n = cfg.n;
  opt.restarts = cfg.restarts;
  opt.iterations = cfg.iters;
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  const SearchReport rep = search_counterexample(opt);

  out << "n " << rep.n << '\n'
      << "trials " << rep.trials << '\n'
      << "seed " << rep.seed << '\n'
      << "baseline_low " << format_short(rep.baseline_low) << '\n'
      << "baseline_high " << format_short(rep.baseline_high) << '\n'
      << "best_max_product " << format_short(rep.best_max_product) << '\n'
      << "best_max_conductances " << join(rep.best_max_conductances, " ", format_full) << '\n'
      << "best_min_product " << format_short(rep.best_min_product) << '\n'
      << "best_min_conductances " << join(rep.best_min_conductances, " ", format_full) << '\n'
      << "margin " << format_short(rep.margin) << '\n'
      << "counterexample " << (rep.counterexample ? "true" : "false") << '\n';

  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) throw UsageError("cannot write '" + cfg.out_path + "'");
    f << "restart,max_product,min_product,max_converged,min_converged";
    for (std::size_t k = 0; k < rep.n; ++k) f << ",max_c" << k;
    for (std::size_t k = 0; k < rep.n; ++k) f << ",min_c" << k;
    f << '\n';
    for (const auto& r : rep.restarts) {
      f << r.index << ',' << format_full(r.max_product) << ',' << format_full(r.min_product) << ','
        << r.max_converged << ',' << r.min_converged << ','
        << join(r.max_conductances, ",", format_full) << ','
        << join(r.min_conductances, ",", format_full) << '\n';
    }
  }
  if (rep.counterexample) {
    err << "counterexample found for n = " << rep.n << " (relative margin "
        << format_short(rep.margin) << ")\n";
    return kCounterexample;
  }
  return kSuccess;
}

int dispatch(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "resistance") return cmd_resistance(cfg, out, err);
  if (cfg.command == "rho") return cmd_rho(cfg, out, err);
  if (cfg.command == "spectrum") return cmd_spectrum(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  if (cfg.command == "figure") return cmd_figure(cfg, out, err);
  if (cfg.command == "monotone") return cmd_monotone(cfg, out, err);
  if (cfg.command == "baseline") return cmd_baseline(cfg, out, err);
  if (cfg.command == "search") return cmd_search(cfg, out, err);
  throw UsageError("no command given");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Effective resistance, Laplacian spectra and extremal eigenvalue search on "
               "weighted cycles",
               "erm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", cfg.out_path, "Output file (CSV for figure/search)");
  app.add_option("--seed", cfg.seed, "RNG seed for search")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Override the command's default tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--restarts", cfg.restarts, "Search restarts")->capture_default_str();
  app.add_option("--iters", cfg.iters, "Nelder-Mead iterations per restart")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads for search (0 = all cores)");

  auto* res = app.add_subcommand("resistance", "Effective resistance between two vertices");
  res->add_option("graph", cfg.graph_path, "Edge-list file")->required();
  res->add_option("i", cfg.vertex_i)->required();
  res->add_option("j", cfg.vertex_j)->required();

  auto* rho = app.add_subcommand("rho", "Global resistance (sum over edges)");
  rho->add_option("graph", cfg.graph_path, "Edge-list file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues, ascending");
  spectrum->add_option("graph", cfg.graph_path, "Edge-list file")->required();

  auto* verify = app.add_subcommand("verify", "Check lambda1*rho <= 6 <= lambda2*rho on a 3-cycle");
  verify->add_option("conductances", cfg.conductances, "c01 c02 c12")->required()->expected(3);

  auto* figure = app.add_subcommand("figure", "CSV of a constant-rho family over a grid");
  figure->add_option("id", cfg.family, "fig1..fig5")->required();
  figure->add_option("lo", cfg.lo)->required();
  figure->add_option("hi", cfg.hi)->required();
  figure->add_option("steps", cfg.steps)->required();

  auto* monotone = app.add_subcommand("monotone", "Monotonicity scan along a constant-rho curve");
  monotone->add_option("id", cfg.family, "lemma43a|lemma43b|lemma44a|lemma44b")->required();
  monotone->add_option("b", cfg.b)->required();
  monotone->add_option("steps", cfg.steps, "Grid points (default 500)");

  auto* baseline = app.add_subcommand("baseline", "Unit n-cycle eigenvalues and rho");
  baseline->add_option("n", cfg.n)->required();

  auto* search = app.add_subcommand("search", "Search for counterexamples on the n-cycle");
  search->add_option("n", cfg.n)->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    return dispatch(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << cfg.graph_path << ": " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DisconnectedGraph& e) {
    err << "error: " << e.what() << '\n';
    return kGraphInvalid;
  } catch (const NotPositiveDefinite& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace erm::cli
