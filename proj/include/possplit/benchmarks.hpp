#pragma once

// Ready-to-run study setups for the three benchmark systems, shared by the
// CLI and the acceptance suite so both drive identical experiments.

#include <memory>

#include "harness.hpp"
#include "problems.hpp"

namespace possplit {

inline BenchmarkProblem<GridFunction> rd_benchmark(const LambdaOmegaParams& params = {}) {
  BenchmarkProblem<GridFunction> prob{
      "lambdaomega", lambdaomega_flows(params), exact_planar_wave(params, 0.0),
      [params](double t) { return exact_planar_wave(params, t); }, 1.0};
  prob.error_scale = norm(prob.initial);
  return prob;
}

inline BenchmarkProblem<GridFunction> sp_benchmark(const SchrodingerPoissonParams& params = {}) {
  BenchmarkProblem<GridFunction> prob{
      "schrodpoisson", sp_flows(params), exact_monokinetic(params, 0.0),
      [params](double t) { return exact_monokinetic(params, t); }, 1.0};
  prob.error_scale = norm(prob.initial);
  return prob;
}

// The ODE benchmark measures against a self-validated fine Runge-Kutta
// reference, stored once over [0, T].
inline BenchmarkProblem<RealVec> tanrot_benchmark(const TanRotParams& params, double h_fine,
                                                  double T) {
  auto reference = std::make_shared<const Trajectory<RealVec>>(
      rk4_reference(params, params.initial, h_fine, T));
  BenchmarkProblem<RealVec> prob{"tanrot", tanrot_flows(params), params.initial,
                                 trajectory_lookup(reference), norm(params.initial)};
  return prob;
}

inline std::vector<double> rd_default_h_grid() { return {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125}; }

inline std::vector<double> sp_default_h_grid() {
  return {1.0, 0.5, 0.25, 0.125, 0.1, 0.05, 0.025, 0.0125, 0.01};
}

inline std::vector<double> tanrot_default_h_grid() { return {0.4, 0.2, 0.1, 0.05, 0.025}; }

}  // namespace possplit
