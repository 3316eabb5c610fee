#pragma once

// Experiment driver: global errors against an exact solution, log-log
// slope fitting with round-off filtering, convergence studies over
// (order, h) grids, decay monitoring, and the CSV/gnuplot outputs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "io.hpp"

namespace possplit {

struct ErrorPair {
  double e_abs = 0.0;
  double e_rel = 0.0;
};

// E_abs = max_n |u_n - U_n|, E_rel = max_n |u_n - U_n| / |u_n|, both over
// the whole trajectory. Times where the exact norm underflows are left out
// of the relative maximum.
template <StateLike S, class Exact>
ErrorPair global_errors(const Trajectory<S>& traj, Exact&& exact) {
  ErrorPair e;
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const S ref = exact(traj.times[n]);
    const double diff = norm(traj.states[n] - ref);
    e.e_abs = std::max(e.e_abs, diff);
    const double scale = norm(ref);
    if (scale >= 1e-300) e.e_rel = std::max(e.e_rel, diff / scale);
  }
  return e;
}

struct FitResult {
  double slope = 0.0;
  double h_lo = 0.0;
  double h_hi = 0.0;
  int points_used = 0;
};

// Least-squares slope of log(error) vs log(h), restricted to errors inside
// [1e-12 * scale, 1e-2]: below the floor round-off dominates, above the
// cap the run is outside the power-law regime.
inline FitResult fit_order(std::span<const std::pair<double, double>> points,
                           double scale = 1.0) {
  const double floor = 1e-12 * scale;
  const double cap = 1e-2;
  std::vector<std::pair<double, double>> used;
  for (const auto& [h, err] : points)
    if (err >= floor && err <= cap) used.push_back({h, err});
  if (used.size() < 3)
    throw InsufficientData("need >= 3 points between the round-off floor and the cap, have " +
                           std::to_string(used.size()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, err] : used) {
    const double x = std::log(h);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(used.size());
  FitResult fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.h_lo = used.front().first;
  fit.h_hi = used.front().first;
  for (const auto& [h, err] : used) {
    fit.h_lo = std::min(fit.h_lo, h);
    fit.h_hi = std::max(fit.h_hi, h);
  }
  fit.points_used = static_cast<int>(used.size());
  return fit;
}

struct ConvergenceRow {
  double h = 0.0;
  double e_abs = 0.0;
  double e_rel = 0.0;
};

struct ConvergenceReport {
  std::string problem;
  Variant variant = Variant::Symmetric;
  int order = 0;
  std::vector<ConvergenceRow> rows;
  std::optional<FitResult> fit;  // present only with >= 3 usable points
};

// A system the study can run: flows, an initial state, the exact solution
// to measure against, and the solution norm scale for the round-off floor.
template <StateLike S>
struct BenchmarkProblem {
  std::string id;
  FlowPair<S> flows;
  S initial;
  std::function<S(double)> exact;
  double error_scale = 1.0;
};

// The paper's runs take maxima over n <= T/h without a fractional final
// step, so T must be an integer multiple of h.
inline std::size_t checked_step_count(double T, double h) {
  if (!(h > 0)) throw UsageError("step size must be positive");
  const auto n = static_cast<std::size_t>(std::llround(T / h));
  if (n == 0 || std::abs(static_cast<double>(n) * h - T) > 1e-9 * std::max(1.0, T))
    throw UsageError("T must be an integer multiple of h (got T=" + fmt17(T) +
                     ", h=" + fmt17(h) + ")");
  return n;
}

inline SchemeSpec scheme_for(Variant variant, int order,
                             ChainSign sign = ChainSign::Plus) {
  if (variant == Variant::Symmetric) {
    if (order % 2 != 0) throw UsageError("symmetric orders are even");
    return solve_symmetric(order / 2);
  }
  return solve_asymmetric(order, sign);
}

// One report per order: every h in the grid is run to time T and measured
// against the exact solution; the slope is fitted on E_abs. The (order, h)
// runs are independent and can spread over workers; assembly stays in
// input order so the output is deterministic.
template <StateLike S>
std::vector<ConvergenceReport> convergence_study(const BenchmarkProblem<S>& problem,
                                                 Variant variant, std::span<const int> orders,
                                                 std::span<const double> h_grid, double T,
                                                 bool parallel = false,
                                                 ChainSign sign = ChainSign::Plus) {
  std::vector<std::size_t> steps;
  steps.reserve(h_grid.size());
  for (const double h : h_grid) steps.push_back(checked_step_count(T, h));
  std::vector<SchemeSpec> schemes;
  schemes.reserve(orders.size());
  for (const int q : orders) schemes.push_back(scheme_for(variant, q, sign));

  const std::size_t n_runs = orders.size() * h_grid.size();
  std::vector<ErrorPair> results(n_runs);
  parallel_for_index(n_runs, parallel ? worker_cap() : 1, [&](std::size_t i) {
    const std::size_t oi = i / h_grid.size();
    const std::size_t hi = i % h_grid.size();
    const auto method = make_method(schemes[oi], problem.flows, false);
    const auto traj = integrate(method, problem.initial, h_grid[hi], steps[hi]);
    if (traj.failed_at) {
      results[i] = {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    } else {
      results[i] = global_errors(traj, problem.exact);
    }
  });

  std::vector<ConvergenceReport> reports;
  reports.reserve(orders.size());
  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    ConvergenceReport rep;
    rep.problem = problem.id;
    rep.variant = variant;
    rep.order = orders[oi];
    std::vector<std::pair<double, double>> fit_points;
    for (std::size_t hi = 0; hi < h_grid.size(); ++hi) {
      const ErrorPair& e = results[oi * h_grid.size() + hi];
      rep.rows.push_back({h_grid[hi], e.e_abs, e.e_rel});
      fit_points.push_back({h_grid[hi], e.e_abs});
    }
    try {
      rep.fit = fit_order(fit_points, problem.error_scale);
    } catch (const InsufficientData&) {
      rep.fit = std::nullopt;
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

struct DecayViolation {
  std::size_t step = 0;
  double time = 0.0;
  double norm_value = 0.0;
  double bound = 0.0;
};

// Steps where |U_n| > e^{-rate t_n} |U_0| (1 + 1e-6). Empty means the
// trajectory obeys the decay envelope.
template <StateLike S>
std::vector<DecayViolation> decay_monitor(const Trajectory<S>& traj, double rate) {
  if (traj.states.empty()) throw UsageError("decay monitor needs a nonempty trajectory");
  std::vector<DecayViolation> violations;
  const double initial = traj.norms[0];
  for (std::size_t n = 0; n < traj.norms.size(); ++n) {
    const double bound = std::exp(-rate * traj.times[n]) * initial * (1.0 + 1e-6);
    if (traj.norms[n] > bound) violations.push_back({n, traj.times[n], traj.norms[n], bound});
  }
  return violations;
}

// --------------------------------------------------------------------------
// Machine-readable outputs. The CSV is the single source of truth; the
// emitted gnuplot script only references it.

inline std::string study_csv(std::span<const ConvergenceReport> reports) {
  std::string out = "problem,variant,order,h,e_abs,e_rel\n";
  for (const auto& rep : reports)
    for (const auto& row : rep.rows)
      out += rep.problem + "," + variant_label(rep.variant) + "," + std::to_string(rep.order) +
             "," + fmt17(row.h) + "," + fmt17(row.e_abs) + "," + fmt17(row.e_rel) + "\n";
  return out;
}

inline std::string report_csv(std::span<const ConvergenceReport> reports) {
  std::string out = "order,slope,h_lo,h_hi,points\n";
  for (const auto& rep : reports) {
    out += std::to_string(rep.order) + ",";
    if (rep.fit) {
      out += fmt17(rep.fit->slope) + "," + fmt17(rep.fit->h_lo) + "," + fmt17(rep.fit->h_hi) +
             "," + std::to_string(rep.fit->points_used);
    } else {
      out += "nan,nan,nan,0";
    }
    out += "\n";
  }
  return out;
}

inline std::string study_gnuplot(const std::string& csv_name,
                                 std::span<const ConvergenceReport> reports) {
  std::string out;
  out += "set datafile separator ','\n";
  out += "set logscale xy\n";
  out += "set xlabel 'h'\n";
  out += "set ylabel 'global error'\n";
  out += "set key top left\n";
  out += "plot \\\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const int q = reports[i].order;
    out += "  '" + csv_name + "' every ::1 using 4:($3==" + std::to_string(q) +
           "?$5:1/0) with linespoints title 'q=" + std::to_string(q) + "'";
    out += i + 1 < reports.size() ? ", \\\n" : "\n";
  }
  return out;
}

}  // namespace possplit
