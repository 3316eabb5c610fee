#pragma once

// Phase-space states. The integrator is generic over anything supporting
// linear combinations, a norm, and a finiteness check; the two concrete
// states are a real vector (ODE problems, Euclidean norm) and a complex
// periodic grid function (PDE problems, discrete L2 norm).

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace possplit {

using Complex = std::complex<double>;

template <class S>
concept StateLike = std::copyable<S> && requires(S s, const S& a, const S& b, double c) {
  { norm(a) } -> std::convertible_to<double>;
  { is_finite(a) } -> std::same_as<bool>;
  { s += b } -> std::same_as<S&>;
  { a* c } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
};

class RealVec {
 public:
  RealVec() = default;
  explicit RealVec(std::vector<double> values) : v_(std::move(values)) {}
  RealVec(std::initializer_list<double> values) : v_(values) {}

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  std::span<const double> values() const { return v_; }

  RealVec& operator+=(const RealVec& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  RealVec& operator-=(const RealVec& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  RealVec& operator*=(double c) {
    for (auto& x : v_) x *= c;
    return *this;
  }

  friend RealVec operator+(RealVec a, const RealVec& b) { return a += b; }
  friend RealVec operator-(RealVec a, const RealVec& b) { return a -= b; }
  friend RealVec operator*(RealVec a, double c) { return a *= c; }
  friend RealVec operator*(double c, RealVec a) { return a *= c; }
  friend bool operator==(const RealVec&, const RealVec&) = default;

  friend double norm(const RealVec& a) {
    double s = 0;
    for (double x : a.v_) s += x * x;
    return std::sqrt(s);
  }
  friend bool is_finite(const RealVec& a) {
    for (double x : a.v_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  std::vector<double> v_;
};

// Complex samples U_r = u(x_r) on a PeriodicGrid, normed by the discrete
// L2 norm sqrt((L/eta) sum |U_r|^2).
class GridFunction {
 public:
  GridFunction(PeriodicGrid grid, std::vector<Complex> values)
      : grid_(grid), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != grid_.size())
      throw UsageError("sample count does not match grid size");
  }
  static GridFunction zeros(const PeriodicGrid& grid) {
    return GridFunction(grid, std::vector<Complex>(grid.size()));
  }

  const PeriodicGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  std::span<const Complex> values() const { return v_; }
  std::span<Complex> values() { return v_; }
  Complex operator[](int r) const { return v_[r]; }
  Complex& operator[](int r) { return v_[r]; }

  GridFunction& operator+=(const GridFunction& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  GridFunction& operator*=(double c) {
    for (auto& x : v_) x *= c;
    return *this;
  }

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double c) { return a *= c; }
  friend GridFunction operator*(double c, GridFunction a) { return a *= c; }
  friend bool operator==(const GridFunction&, const GridFunction&) = default;

  friend double norm(const GridFunction& u) {
    double s = 0;
    for (const auto& z : u.v_) s += std::norm(z);
    return std::sqrt(u.grid_.spacing() * s);
  }
  friend bool is_finite(const GridFunction& u) {
    for (const auto& z : u.v_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

 private:
  PeriodicGrid grid_;
  std::vector<Complex> v_;
};

// Builds u(x_r) from a callable of the sample point.
template <class F>
GridFunction sample(const PeriodicGrid& grid, F&& f) {
  std::vector<Complex> v(grid.size());
  for (int r = 0; r < grid.size(); ++r) v[r] = f(grid.point(r));
  return GridFunction(grid, std::move(v));
}

static_assert(StateLike<RealVec>);
static_assert(StateLike<GridFunction>);

}  // namespace possplit
