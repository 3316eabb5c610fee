#pragma once

// Extrapolation weights for affine combinations of Lie-Trotter chains.
// Everything here runs in exact rational arithmetic: the weights alternate
// in sign and cancel heavily, so floating point is only entered once, when
// a scheme is handed to an integrator.

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace possplit {

enum class Variant { AsymmetricPlus, AsymmetricMinus, Symmetric };

// Composition order of one Lie-Trotter step: Plus applies flow0 first.
enum class ChainSign { Plus, Minus };

inline bool is_asymmetric(Variant v) { return v != Variant::Symmetric; }

inline std::string variant_label(Variant v) {
  return v == Variant::Symmetric ? "sym" : "asym";
}

struct SchemeSpec {
  Variant variant = Variant::Symmetric;
  int order = 0;                 // q; even when symmetric
  int chains = 0;                // s; minimal: s = q (asym), s = q/2 (sym)
  std::vector<Rational> gamma;   // gamma[m-1] weighs the m-fold chain

  std::string id() const { return variant_label(variant) + std::to_string(order); }
};

struct CostMetrics {
  long total_steps = 0;     // S_T: basic flow evaluations per affine step
  long parallel_steps = 0;  // S_P: critical path with one chain per worker
};

// One evaluated condition: sum over m of m^{-k} gamma_m (k = 0 is the
// plain weight sum) against its required exact value.
struct ConditionEntry {
  int exponent = 0;
  Rational sum;
  Rational expected;
};

struct ConditionReport {
  std::string scheme_id;
  std::vector<ConditionEntry> entries;
};

struct IdentityEntry {
  int k = 0;
  int r = 0;
  Rational sum;
  Rational expected;
};

struct IdentityReport {
  std::string scheme_id;
  std::vector<IdentityEntry> entries;
};

namespace detail {

// Exact Gaussian elimination over the rationals. The condition systems are
// Vandermonde systems in the nodes 1/m (or 1/m^2), hence nonsingular.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("singular condition system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Square condition system for the minimal chain count.
//   asymmetric: sum m^{-k} gamma_m = delta_{k,0},           k = 0..q-1
//   symmetric:  sum m^{-2k} gamma_m = (1/2) delta_{k,0},    k = 0..n-1
inline std::vector<Rational> conditions_by_linear_solve(int s, bool symmetric) {
  std::vector<std::vector<Rational>> a(s, std::vector<Rational>(s));
  std::vector<Rational> b(s, Rational(0));
  b[0] = symmetric ? Rational(1, 2) : Rational(1);
  for (int k = 0; k < s; ++k)
    for (int m = 1; m <= s; ++m)
      a[k][m - 1] = Rational(1, ipow(m, symmetric ? 2 * k : k));
  return solve_linear(std::move(a), std::move(b));
}

}  // namespace detail

// Weights of the order-q extrapolation of the Lie-Trotter step, from the
// Lagrange product closed form, cross-checked against the exact linear
// solve of the condition system. A mismatch means the build is broken.
inline SchemeSpec solve_asymmetric(int q, ChainSign sign = ChainSign::Plus) {
  if (q < 1) throw UsageError("asymmetric order must be >= 1");
  std::vector<Rational> gamma(q);
  for (int m = 1; m <= q; ++m) {
    Rational p(1);
    for (int j = 1; j <= q; ++j)
      if (j != m) p *= Rational(m) / (m - j);
    gamma[m - 1] = p;
  }
  if (gamma != detail::conditions_by_linear_solve(q, false))
    throw std::logic_error("asymmetric weights: product formula and linear solve disagree");
  SchemeSpec spec;
  spec.variant = sign == ChainSign::Plus ? Variant::AsymmetricPlus : Variant::AsymmetricMinus;
  spec.order = q;
  spec.chains = q;
  spec.gamma = std::move(gamma);
  return spec;
}

// Weights of the order-2n extrapolation of the symmetrized step.
inline SchemeSpec solve_symmetric(int n) {
  if (n < 1) throw UsageError("symmetric half-order must be >= 1");
  std::vector<Rational> gamma(n);
  for (int m = 1; m <= n; ++m) {
    Rational p(1, 2);
    for (int j = 1; j <= n; ++j)
      if (j != m) p *= Rational(m * m) / (m * m - j * j);
    gamma[m - 1] = p;
  }
  if (gamma != detail::conditions_by_linear_solve(n, true))
    throw std::logic_error("symmetric weights: product formula and linear solve disagree");
  SchemeSpec spec;
  spec.variant = Variant::Symmetric;
  spec.order = 2 * n;
  spec.chains = n;
  spec.gamma = std::move(gamma);
  return spec;
}

// Re-evaluates every condition sum exactly. Throws ConditionViolation on
// the first nonzero residual; the returned report lists each sum.
inline ConditionReport verify_order_conditions(const SchemeSpec& spec) {
  const int s = spec.chains;
  const bool sym = spec.variant == Variant::Symmetric;
  const int n_conditions = sym ? spec.order / 2 : spec.order;
  ConditionReport report;
  report.scheme_id = spec.id();
  for (int k = 0; k < n_conditions; ++k) {
    const int exponent = sym ? 2 * k : k;
    Rational sum(0);
    for (int m = 1; m <= s; ++m)
      sum += spec.gamma[m - 1] / Rational(ipow(m, exponent));
    Rational expected = k == 0 ? (sym ? Rational(1, 2) : Rational(1)) : Rational(0);
    if (sum != expected)
      throw ConditionViolation("order condition k=" + std::to_string(exponent) +
                               " violated for " + spec.id() + ": sum = " + sum.str());
    report.entries.push_back({exponent, sum, expected});
  }
  return report;
}

// Machine check of the two combinatorial lemmas the consistency proof
// rests on: for 1 <= k <= q the binomial-weighted sums vanish for
// r = 1..k-1 and equal 1/k! for r = k, all in exact rationals.
inline IdentityReport verify_combinatorial_identities(const SchemeSpec& spec) {
  const int s = spec.chains;
  const int q = spec.order;
  const bool sym = spec.variant == Variant::Symmetric;
  IdentityReport report;
  report.scheme_id = spec.id();
  for (int k = 1; k <= q; ++k) {
    for (int r = 1; r <= k; ++r) {
      Rational sum(0);
      for (int m = 1; m <= s; ++m) {
        BigInt coeff = binomial(m, r);
        if (sym) {
          const BigInt mirrored = binomial(m + r - 1, m - 1);
          if ((k + r) % 2 == 0)
            coeff += mirrored;
          else
            coeff -= mirrored;
        }
        if (coeff == 0) continue;
        sum += Rational(coeff) * spec.gamma[m - 1] / Rational(ipow(m, k));
      }
      Rational expected = r == k ? Rational(1, factorial(k)) : Rational(0);
      if (sum != expected)
        throw IdentityViolation("identity (k=" + std::to_string(k) + ", r=" +
                                std::to_string(r) + ") violated for " + spec.id() +
                                ": sum = " + sum.str());
      report.entries.push_back({k, r, sum, expected});
    }
  }
  return report;
}

// S_T counts both partial flows of every Lie-Trotter substep across all
// chains (both signs for the symmetric variant); S_P is the longest chain.
inline CostMetrics step_counts(const SchemeSpec& spec) {
  long sum_m = 0;
  long max_m = 0;
  for (int m = 1; m <= spec.chains; ++m) {
    if (spec.gamma[m - 1] == 0) continue;
    sum_m += m;
    max_m = std::max<long>(max_m, m);
  }
  const bool sym = spec.variant == Variant::Symmetric;
  return {(sym ? 4 : 2) * sum_m, 2 * max_m};
}

// The single rounding of the weights to double, done when a scheme is
// handed to an integrator.
inline std::vector<double> weights_double(const SchemeSpec& spec) {
  std::vector<double> w;
  w.reserve(spec.gamma.size());
  for (const auto& g : spec.gamma) w.push_back(to_double(g));
  return w;
}

}  // namespace possplit
