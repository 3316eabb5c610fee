#pragma once

// The three benchmark systems: a planar tan-relaxation/rotation ODE, the
// lambda-omega oscillatory reaction-diffusion system, and the regularized
// Schrodinger-Poisson equation with fractional dissipation. Each provides
// its exact partial flows and the exact or reference solutions the
// convergence harness measures against.

#include <cmath>
#include <memory>
#include <vector>

#include "core.hpp"
#include "spectral.hpp"

namespace possplit {

// ---------------------------------------------------------------------------
// Tan-relaxation ODE:  u1' = w u2 - tan(u1),  u2' = -w u1 - tan(u2),  w = 4.

struct TanRotParams {
  double rotation_rate = 4.0;  // fixed by the benchmark system
  RealVec initial{1.0, 1.5};
};

// Exact linear flow: exp(h [[0, w], [-w, 0]]), a clockwise rotation.
inline RealVec tanrot_flow0(const TanRotParams& p, double h, const RealVec& u) {
  const double c = std::cos(p.rotation_rate * h);
  const double s = std::sin(p.rotation_rate * h);
  return RealVec{u[0] * c + u[1] * s, -u[0] * s + u[1] * c};
}

// Exact relaxation flow of u_j' = -tan(u_j): u_j(h) = asin(e^{-h} sin u_j).
// The formula is the flow on |u_j| < pi/2 and extends it as a continuous
// semiflow landing on the principal branch, so transient chain states
// slightly past pi/2 (coarse substeps rotate them there) stay integrable.
inline RealVec tanrot_flow1(double h, const RealVec& u) {
  if (h == 0) return u;
  const double damp = std::exp(-h);
  RealVec v = u;
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::asin(damp * std::sin(u[j]));
  return v;
}

inline FlowPair<RealVec> tanrot_flows(const TanRotParams& p = {}) {
  FlowPair<RealVec> flows;
  flows.flow0 = [p](double h, const RealVec& u) { return tanrot_flow0(p, h, u); };
  flows.flow1 = [](double h, const RealVec& u) { return tanrot_flow1(h, u); };
  return flows;
}

// Full right-hand side, for the Runge-Kutta reference only. tan has poles
// at |u_j| = pi/2; the reference refuses to step past them.
inline RealVec tanrot_field(const TanRotParams& p, const RealVec& u) {
  for (std::size_t j = 0; j < u.size(); ++j)
    if (!(std::abs(u[j]) < pi / 2))
      throw TanDomain("tan-relaxation field evaluated at |u_j| >= pi/2");
  return RealVec{p.rotation_rate * u[1] - std::tan(u[0]),
                 -p.rotation_rate * u[0] - std::tan(u[1])};
}

// Classical fourth-order Runge-Kutta at a fixed fine step; the harness
// uses it as the reference solution for the ODE benchmark.
inline Trajectory<RealVec> rk4_reference(const TanRotParams& p, const RealVec& u0,
                                         double h_fine, double T) {
  if (!(h_fine > 0)) throw UsageError("reference step must be positive");
  const double steps_real = T / h_fine;
  const auto n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (std::abs(static_cast<double>(n_steps) * h_fine - T) > 1e-9 * std::max(1.0, T))
    throw UsageError("T must be an integer multiple of the reference step");
  Trajectory<RealVec> traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.norms.reserve(n_steps + 1);
  RealVec u = u0;
  traj.times.push_back(0.0);
  traj.states.push_back(u);
  traj.norms.push_back(norm(u));
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const RealVec k1 = tanrot_field(p, u);
    const RealVec k2 = tanrot_field(p, u + k1 * (h_fine / 2));
    const RealVec k3 = tanrot_field(p, u + k2 * (h_fine / 2));
    const RealVec k4 = tanrot_field(p, u + k3 * h_fine);
    u += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h_fine / 6);
    traj.times.push_back(static_cast<double>(n) * h_fine);
    traj.states.push_back(u);
    traj.norms.push_back(norm(u));
  }
  return traj;
}

// Exact-time lookup into a stored fine trajectory.
template <StateLike S>
std::function<S(double)> trajectory_lookup(std::shared_ptr<const Trajectory<S>> traj) {
  const double h = traj->times.size() > 1 ? traj->times[1] : 1.0;
  return [traj, h](double t) {
    const auto idx = static_cast<std::size_t>(std::llround(t / h));
    if (idx >= traj->times.size() || std::abs(traj->times[idx] - t) > 1e-9 * std::max(1.0, t))
      throw UsageError("requested time is not on the reference grid");
    return traj->states[idx];
  };
}

// ---------------------------------------------------------------------------
// Lambda-omega reaction-diffusion system, in the complex form
//   u_t = Laplace(u) + (1 - |u|^2) u + i (omega0 - omega1 |u|^2) u.

struct LambdaOmegaParams {
  double omega0 = 1.0;
  double omega1 = 0.5;
  double period = 4 * pi;  // L
  int eta = 63;
  double theta0 = 0.0;

  PeriodicGrid grid() const { return PeriodicGrid(eta, period); }
  // Planar waves are stable for L > 2 pi sqrt(3 + 2 omega1^2).
  bool planar_wave_stable() const {
    return period > 2 * pi * std::sqrt(3 + 2 * omega1 * omega1);
  }
};

inline Complex heat_symbol(double k2, double h) { return Complex(std::exp(-k2 * h), 0.0); }

// Exact reaction flow, pointwise per node: the amplitude follows the
// logistic relaxation to |u| = 1 and the phase integrates
// omega0 - omega1 |u|^2 along it.
inline GridFunction lambdaomega_flow1(const LambdaOmegaParams& p, double h,
                                      const GridFunction& u) {
  if (h == 0) return u;
  const double growth = std::exp(h);
  const double w = std::expm1(2 * h);  // e^{2h} - 1
  GridFunction v = u;
  for (int r = 0; r < v.size(); ++r) {
    const double m2 = std::norm(u[r]);
    const double denom = 1.0 + w * m2;
    const double amp = growth / std::sqrt(denom);
    const double phase = p.omega0 * h - 0.5 * p.omega1 * std::log1p(w * m2);
    v[r] = u[r] * std::polar(amp, phase);
  }
  return v;
}

inline FlowPair<GridFunction> lambdaomega_flows(const LambdaOmegaParams& p) {
  auto dft = std::make_shared<const Dft>(p.grid());
  FlowPair<GridFunction> flows;
  flows.flow0 = [dft](double h, const GridFunction& u) {
    return apply_semigroup(*dft, heat_symbol, h, u);
  };
  flows.flow1 = [p](double h, const GridFunction& u) { return lambdaomega_flow1(p, h, u); };
  return flows;
}

// Planar-wave amplitude r* = sqrt(L^2 - 4 pi^2) / L.
inline double planar_wave_amplitude(const LambdaOmegaParams& p) {
  if (!(p.period > 2 * pi)) throw UsageError("planar waves need L > 2 pi");
  return std::sqrt(p.period * p.period - 4 * pi * pi) / p.period;
}

// u(x,t) = r* exp(i (theta0 + a x + (omega0 - omega1 r*^2) t)).
inline GridFunction exact_planar_wave(const LambdaOmegaParams& p, double t) {
  const double rstar = planar_wave_amplitude(p);
  const PeriodicGrid grid = p.grid();
  const double a = grid.base_wavenumber();
  const double speed = p.omega0 - p.omega1 * rstar * rstar;
  return sample(grid, [&](double x) { return std::polar(rstar, p.theta0 + a * x + speed * t); });
}

// The perturbed initial data of the stability run:
//   0.8 u0(x) + 0.1 + 2.5 e^{i 2 a x} - 0.8 i e^{i 3 a x}.
inline GridFunction perturbed_rd_datum(const LambdaOmegaParams& p) {
  const GridFunction base = exact_planar_wave(p, 0.0);
  const PeriodicGrid grid = p.grid();
  const double a = grid.base_wavenumber();
  GridFunction v = base * 0.8;
  for (int r = 0; r < v.size(); ++r) {
    const double x = grid.point(r);
    v[r] += 0.1 + 2.5 * std::polar(1.0, 2 * a * x) -
            0.8 * Complex(0, 1) * std::polar(1.0, 3 * a * x);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Regularized Schrodinger-Poisson equation on the 2 pi-periodic line:
//   u_t = i u_xx - (-d_xx)^beta u + i |u|^2 u + i (G * |u|^2) u.

struct SchrodingerPoissonParams {
  double beta = 0.25;    // fractional dissipation exponent, 0 < beta <= 1
  double lambda = 1.0;   // Poisson kernel parameter
  int eta = 31;
  int nu0 = 4;           // monokinetic mode
  double r0 = 1.0;
  double theta0 = 0.0;

  PeriodicGrid grid() const { return PeriodicGrid(eta, 2 * pi); }

  void validate() const {
    if (!(beta > 0) || beta > 1) throw UsageError("beta must lie in (0, 1]");
    if (!(lambda > 0)) throw UsageError("lambda must be positive");
  }
};

// Free flow of L = i d_xx - (-d_xx)^beta: per-mode factor
// exp((-i k2 - k2^beta) h).
inline GridFunction sp_flow0(const Dft& dft, double beta, double h, const GridFunction& u) {
  return apply_semigroup(
      dft,
      [beta](double k2, double hh) {
        return std::polar(std::exp(-std::pow(k2, beta) * hh), -k2 * hh);
      },
      h, u);
}

// Phase flow of u_t = i (|u|^2 + G*|u|^2) u. |u| is conserved by this
// equation, so the potential is frozen and the flow is an exact pointwise
// phase factor.
inline GridFunction sp_flow1(const Dft& dft, const FourierKernel& kernel, double h,
                             const GridFunction& u) {
  if (h == 0) return u;
  const int eta = u.size();
  std::vector<double> rho(eta);
  for (int r = 0; r < eta; ++r) rho[r] = std::norm(u[r]);
  const std::vector<double> nonlocal = convolve(dft, kernel, rho);
  GridFunction v = u;
  for (int r = 0; r < eta; ++r) v[r] = u[r] * std::polar(1.0, h * (rho[r] + nonlocal[r]));
  return v;
}

inline FlowPair<GridFunction> sp_flows(const SchrodingerPoissonParams& p) {
  p.validate();
  auto dft = std::make_shared<const Dft>(p.grid());
  auto kernel = std::make_shared<const FourierKernel>(poisson_kernel(p.grid(), p.lambda));
  FlowPair<GridFunction> flows;
  const double beta = p.beta;
  flows.flow0 = [dft, beta](double h, const GridFunction& u) {
    return sp_flow0(*dft, beta, h, u);
  };
  flows.flow1 = [dft, kernel](double h, const GridFunction& u) {
    return sp_flow1(*dft, *kernel, h, u);
  };
  return flows;
}

// Monokinetic wave r(t) e^{i (nu0 x + theta(t))} with
//   r(t) = r0 e^{-|nu0|^{2 beta} t},
//   theta(t) = -nu0^2 t
//            + (1/2)(1 + ghat_0) r0^2 |nu0|^{-2 beta} (1 - e^{-2 |nu0|^{2 beta} t})
//            + theta0.
inline GridFunction exact_monokinetic(const SchrodingerPoissonParams& p, double t) {
  p.validate();
  const PeriodicGrid grid = p.grid();
  if (p.nu0 == 0)
    throw UsageError("nu0 = 0 is the constant periodic solution; use exact_constant");
  if (std::abs(p.nu0) > grid.half_modes())
    throw UsageError("monokinetic mode must be resolved by the grid");
  const double mu = std::pow(std::abs(p.nu0), 2 * p.beta);
  const double ghat0 = 1.0;  // Poisson kernel: e^{-lambda * 0}
  const double r = p.r0 * std::exp(-mu * t);
  const double theta = -static_cast<double>(p.nu0) * p.nu0 * t +
                       0.5 * (1.0 + ghat0) * p.r0 * p.r0 / mu * (-std::expm1(-2 * mu * t)) +
                       p.theta0;
  return sample(grid, [&](double x) { return std::polar(r, p.nu0 * x + theta); });
}

// The nu0 = 0 branch: u(x,t) = r0 e^{i ((1 + ghat_0) r0^2 t + theta0)},
// time periodic.
inline GridFunction exact_constant(const SchrodingerPoissonParams& p, double t) {
  p.validate();
  const double ghat0 = 1.0;
  return sample(p.grid(), [&](double) {
    return std::polar(p.r0, (1.0 + ghat0) * p.r0 * p.r0 * t + p.theta0);
  });
}

// Odd initial data of the decay experiment: e^{cos(2x) + i pi/6} sin(5x).
inline GridFunction sp_odd_datum(const PeriodicGrid& grid) {
  return sample(grid, [](double x) {
    return std::exp(std::cos(2 * x)) * std::polar(1.0, pi / 6) * std::sin(5 * x);
  });
}

// Even companion run: e^{cos(2x) + i pi/6} (1 - 1.75 cos^2(5x)).
inline GridFunction sp_even_datum(const PeriodicGrid& grid) {
  return sample(grid, [](double x) {
    const double c = std::cos(5 * x);
    return std::exp(std::cos(2 * x)) * std::polar(1.0, pi / 6) * (1.0 - 1.75 * c * c);
  });
}

// Relative deviation from odd symmetry, measured spectrally: u is odd on
// the grid iff U_hat_nu + U_hat_{(eta-nu) mod eta} = 0 for every nu.
inline double odd_defect(const Dft& dft, const GridFunction& u) {
  const std::vector<Complex> coeffs = dft.forward(u.values());
  const int eta = u.size();
  double worst = 0, largest = 0;
  for (int nu = 0; nu < eta; ++nu) {
    worst = std::max(worst, std::abs(coeffs[nu] + coeffs[(eta - nu) % eta]));
    largest = std::max(largest, std::abs(coeffs[nu]));
  }
  return largest > 0 ? worst / largest : 0.0;
}

}  // namespace possplit
