#pragma once

// The generic splitting integrator: Lie-Trotter steps, m-fold chains at
// substep h/m, their affine combinations, the time-stepping loop, and an
// empirical Lipschitz probe. Chains within one step are independent and
// may run on worker threads; the weighted reduction always happens on the
// calling thread in a fixed order (ascending m, plus-chain before
// minus-chain), so parallel and sequential runs are bitwise identical.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coeffs.hpp"
#include "parallel.hpp"
#include "state.hpp"

namespace possplit {

// Partial flows of the split problem. Negative steps are rejected here:
// the methods never need them and the dissipative semigroups do not
// extend to h < 0. Both flows must be the identity at h = 0.
template <StateLike S>
struct FlowPair {
  std::function<S(double, const S&)> flow0;
  std::function<S(double, const S&)> flow1;

  S apply0(double h, const S& u) const {
    check_step(h);
    return flow0(h, u);
  }
  S apply1(double h, const S& u) const {
    check_step(h);
    return flow1(h, u);
  }

 private:
  static void check_step(double h) {
    if (!(h >= 0)) throw UsageError("partial flows accept h >= 0 only");
  }
};

// Phi^+(h) = flow1(h) . flow0(h);  Phi^-(h) = flow0(h) . flow1(h).
template <StateLike S>
S lie_step(const FlowPair<S>& flows, ChainSign sign, double h, const S& u) {
  return sign == ChainSign::Plus ? flows.apply1(h, flows.apply0(h, u))
                                 : flows.apply0(h, flows.apply1(h, u));
}

// Strang baseline: flow0(h/2) . flow1(h) . flow0(h/2).
template <StateLike S>
S strang_step(const FlowPair<S>& flows, double h, const S& u) {
  return flows.apply0(h / 2, flows.apply1(h, flows.apply0(h / 2, u)));
}

// Phi_m^{sign}(h/m): m Lie-Trotter steps of length h/m.
template <StateLike S>
S chain_eval(const FlowPair<S>& flows, ChainSign sign, int m, double h, const S& u) {
  if (m < 1) throw UsageError("chain length must be >= 1");
  const double tau = h / m;
  S v = lie_step(flows, sign, tau, u);
  for (int i = 1; i < m; ++i) v = lie_step(flows, sign, tau, v);
  return v;
}

template <StateLike S>
struct SplittingMethod {
  SchemeSpec scheme;
  std::vector<double> weights;  // scheme.gamma rounded once, at construction
  FlowPair<S> flows;
  bool parallel = false;
};

template <StateLike S>
SplittingMethod<S> make_method(SchemeSpec scheme, FlowPair<S> flows, bool parallel = false) {
  SplittingMethod<S> m;
  m.weights = weights_double(scheme);
  m.scheme = std::move(scheme);
  m.flows = std::move(flows);
  m.parallel = parallel;
  return m;
}

// One step of the affine method: the weighted sum of all chains evaluated
// from the same input. Symmetric schemes pair a plus and a minus chain per
// m. Throws NumericFailure if any chain comes back non-finite.
template <StateLike S>
S affine_step(const SplittingMethod<S>& method, double h, const S& u) {
  if (h == 0) return u;
  const int s = method.scheme.chains;
  const bool sym = method.scheme.variant == Variant::Symmetric;
  const ChainSign asym_sign =
      method.scheme.variant == Variant::AsymmetricMinus ? ChainSign::Minus : ChainSign::Plus;

  const std::size_t n_chains = sym ? 2 * static_cast<std::size_t>(s) : s;
  std::vector<std::optional<S>> slots(n_chains);
  auto eval = [&](std::size_t i) {
    const int m = static_cast<int>(sym ? i / 2 : i) + 1;
    const ChainSign sign = sym ? (i % 2 == 0 ? ChainSign::Plus : ChainSign::Minus) : asym_sign;
    slots[i] = chain_eval(method.flows, sign, m, h, u);
  };
  parallel_for_index(n_chains, method.parallel ? worker_cap() : 1, eval);

  for (std::size_t i = 0; i < n_chains; ++i) {
    if (!is_finite(*slots[i])) {
      const int m = static_cast<int>(sym ? i / 2 : i) + 1;
      throw NumericFailure("chain m=" + std::to_string(m) + " of " + method.scheme.id() +
                           " produced a non-finite value at h=" + std::to_string(h));
    }
  }

  S acc = *slots[0] * method.weights[0];
  for (std::size_t i = 1; i < n_chains; ++i) {
    const int m = static_cast<int>(sym ? i / 2 : i) + 1;
    acc += *slots[i] * method.weights[m - 1];
  }
  return acc;
}

template <StateLike S>
struct Trajectory {
  std::vector<double> times;   // t_n = n h, constant spacing
  std::vector<S> states;
  std::vector<double> norms;   // per-step diagnostics
  std::optional<std::size_t> failed_at;  // first step index that went non-finite

  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
  const S& back() const { return states.back(); }
};

template <StateLike S>
using StepObserver = std::function<void(std::size_t, double, const S&)>;

// U_0 = u0, U_n = affine_step(h, U_{n-1}). A NumericFailure aborts the run
// and leaves the partial trajectory with the failing index recorded; flow
// domain errors propagate.
template <StateLike S>
Trajectory<S> integrate(const SplittingMethod<S>& method, const S& u0, double h,
                        std::size_t n_steps, const StepObserver<S>& observer = {}) {
  if (n_steps > 0 && !(h > 0)) throw UsageError("step size must be positive");
  Trajectory<S> traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.norms.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  traj.norms.push_back(norm(u0));
  if (observer) observer(0, 0.0, u0);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    S next = u0;
    try {
      next = affine_step(method, h, traj.states.back());
    } catch (const NumericFailure&) {
      traj.failed_at = n;
      break;
    }
    const double t = static_cast<double>(n) * h;
    traj.times.push_back(t);
    traj.norms.push_back(norm(next));
    traj.states.push_back(std::move(next));
    if (observer) observer(n, t, traj.states.back());
  }
  return traj;
}

// Sample-based lower bound for the Lipschitz constant of one affine step:
// the largest ratio |Phi(h,u) - Phi(h,u')| / |u - u'| over the pairs.
template <StateLike S>
double estimate_lipschitz(const SplittingMethod<S>& method, double h,
                          std::span<const std::pair<S, S>> pairs) {
  if (pairs.empty()) throw DegenerateInput("no sample pairs given");
  double best = 0.0;
  for (const auto& [u, v] : pairs) {
    const double d = norm(u - v);
    if (d == 0) throw DegenerateInput("coincident sample pair");
    const double mapped = norm(affine_step(method, h, u) - affine_step(method, h, v));
    best = std::max(best, mapped / d);
  }
  return best;
}

}  // namespace possplit
