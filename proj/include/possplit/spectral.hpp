#pragma once

// Fourier pseudospectral backend on odd periodic grids: the DFT with the
// 1/eta forward normalization, per-mode semigroup factors, and kernel
// convolution. Everything is pure given an immutable Dft, so chain workers
// can share one engine freely.

#include <cmath>
#include <span>
#include <vector>

#include "grid.hpp"
#include "state.hpp"

namespace possplit {

// Dense DFT with a precomputed twiddle table. The grids in this project
// are small and odd (31..255 points), where the O(eta^2) transform is
// fast, plan-free, and deterministic; tables are read-only after
// construction.
class Dft {
 public:
  explicit Dft(PeriodicGrid grid) : grid_(grid), twiddle_(grid.size()) {
    const int eta = grid_.size();
    for (int k = 0; k < eta; ++k) {
      const double angle = -2.0 * pi * k / eta;
      twiddle_[k] = Complex(std::cos(angle), std::sin(angle));
    }
  }

  const PeriodicGrid& grid() const { return grid_; }

  // U_hat_nu = (1/eta) sum_r U_r e^{-i 2 pi r nu / eta}
  std::vector<Complex> forward(std::span<const Complex> samples) const {
    const int eta = grid_.size();
    std::vector<Complex> coeffs(eta);
    for (int nu = 0; nu < eta; ++nu) {
      Complex acc(0);
      int idx = 0;
      for (int r = 0; r < eta; ++r) {
        acc += samples[r] * twiddle_[idx];
        idx += nu;
        if (idx >= eta) idx -= eta;
      }
      coeffs[nu] = acc / static_cast<double>(eta);
    }
    return coeffs;
  }

  // U_r = sum_nu U_hat_nu e^{+i 2 pi r nu / eta}
  std::vector<Complex> inverse(std::span<const Complex> coeffs) const {
    const int eta = grid_.size();
    std::vector<Complex> samples(eta);
    for (int r = 0; r < eta; ++r) {
      Complex acc(0);
      int idx = 0;
      for (int nu = 0; nu < eta; ++nu) {
        acc += coeffs[nu] * std::conj(twiddle_[idx]);
        idx += r;
        if (idx >= eta) idx -= eta;
      }
      samples[r] = acc;
    }
    return samples;
  }

 private:
  PeriodicGrid grid_;
  std::vector<Complex> twiddle_;
};

inline std::vector<Complex> dft_forward(const Dft& dft, const GridFunction& u) {
  return dft.forward(u.values());
}

inline GridFunction dft_inverse(const Dft& dft, std::span<const Complex> coeffs) {
  return GridFunction(dft.grid(), dft.inverse(coeffs));
}

// Applies a Fourier-multiplier semigroup: each mode is scaled by
// symbol(k2, h) where k2 = a^2 lambda_nu is the physical squared
// wavenumber of the mode. h = 0 is the identity exactly.
template <class Symbol>
GridFunction apply_semigroup(const Dft& dft, Symbol&& symbol, double h, const GridFunction& u) {
  if (!(h >= 0)) throw UsageError("semigroup accepts h >= 0 only");
  if (h == 0) return u;
  const PeriodicGrid& grid = dft.grid();
  const double a2 = grid.base_wavenumber() * grid.base_wavenumber();
  std::vector<Complex> coeffs = dft.forward(u.values());
  for (int nu = 0; nu < grid.size(); ++nu)
    coeffs[nu] *= symbol(a2 * aliased_eigenvalue(nu, grid), h);
  return GridFunction(grid, dft.inverse(coeffs));
}

// Real even kernel given by its Fourier coefficients, indexed like the DFT
// output (entry nu belongs to aliased signed mode of index nu).
struct FourierKernel {
  std::vector<double> ghat;
};

// G(x) = sinh(lambda) / (cosh(lambda) - cos(x)), whose coefficients are
// ghat_nu = e^{-lambda |nu|}.
inline FourierKernel poisson_kernel(const PeriodicGrid& grid, double lambda) {
  if (!(lambda > 0)) throw UsageError("Poisson kernel parameter must be positive");
  FourierKernel kernel;
  kernel.ghat.resize(grid.size());
  for (int nu = 0; nu < grid.size(); ++nu)
    kernel.ghat[nu] = std::exp(-lambda * signed_mode_abs(nu, grid));
  return kernel;
}

// (G * rho)(x_r) for real rho: per-mode product ghat_nu rho_hat_nu and
// inverse transform. The output is real up to round-off; its imaginary
// part is checked against 1e-12 |rho| and discarded.
inline std::vector<double> convolve(const Dft& dft, const FourierKernel& kernel,
                                    std::span<const double> rho) {
  const PeriodicGrid& grid = dft.grid();
  const int eta = grid.size();
  if (static_cast<int>(rho.size()) != eta || static_cast<int>(kernel.ghat.size()) != eta)
    throw UsageError("convolve: size mismatch");
  std::vector<Complex> work(rho.begin(), rho.end());
  std::vector<Complex> coeffs = dft.forward(work);
  for (int nu = 0; nu < eta; ++nu) coeffs[nu] *= kernel.ghat[nu];
  std::vector<Complex> out = dft.inverse(coeffs);

  double rho_sq = 0, imag_sq = 0;
  for (int r = 0; r < eta; ++r) {
    rho_sq += rho[r] * rho[r];
    imag_sq += out[r].imag() * out[r].imag();
  }
  const double scale = grid.spacing();
  if (std::sqrt(scale * imag_sq) > 1e-12 * std::sqrt(scale * rho_sq))
    throw SymmetryViolation("convolution of real data has a non-negligible imaginary part");

  std::vector<double> result(eta);
  for (int r = 0; r < eta; ++r) result[r] = out[r].real();
  return result;
}

}  // namespace possplit
