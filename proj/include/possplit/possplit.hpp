#pragma once

// Umbrella header: positive-step affine splitting integrators built from
// extrapolated Lie-Trotter chains, a periodic pseudospectral backend, the
// benchmark systems, and the convergence harness.

#include "coeffs.hpp"
#include "core.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "problems.hpp"
#include "rational.hpp"
#include "spectral.hpp"
#include "state.hpp"
