#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace possplit {

inline constexpr double pi = std::numbers::pi_v<double>;

// Uniform sampling x_r = L r / eta of the L-periodic line, with eta odd so
// the retained mode set -l..l is symmetric and no Nyquist mode needs a
// special rule.
class PeriodicGrid {
 public:
  PeriodicGrid(int eta, double period) : eta_(eta), period_(period) {
    if (eta < 3 || eta % 2 == 0)
      throw UsageError("grid size must be odd and >= 3, got " + std::to_string(eta));
    if (!(period > 0)) throw UsageError("grid period must be positive");
  }

  int size() const { return eta_; }
  int half_modes() const { return (eta_ - 1) / 2; }  // l in eta = 2l+1
  double period() const { return period_; }
  double spacing() const { return period_ / eta_; }
  double base_wavenumber() const { return 2.0 * pi / period_; }  // a = 2*pi/L
  double point(int r) const { return period_ * r / eta_; }

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  int eta_;
  double period_;
};

// lambda_nu = eta^2 g(nu/eta) with g(xi) = xi^2 - 2(xi - 1/2)_+ : the
// squared signed wavenumber of DFT mode nu after aliasing, so
// lambda_nu = nu^2 for nu <= l and (eta - nu)^2 above.
inline double aliased_eigenvalue(int nu, const PeriodicGrid& grid) {
  if (nu < 0 || nu >= grid.size())
    throw UsageError("mode index out of range");
  const long m = nu <= grid.half_modes() ? nu : grid.size() - nu;
  return static_cast<double>(m * m);
}

// Signed mode magnitude |nu| of DFT index nu (the square root of the
// aliased eigenvalue, kept in integers).
inline int signed_mode_abs(int nu, const PeriodicGrid& grid) {
  return nu <= grid.half_modes() ? nu : grid.size() - nu;
}

}  // namespace possplit
