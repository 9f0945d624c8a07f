#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"
#include "polariton/state.hpp"

namespace polariton {

enum class InitKind { zero, gaussian };

/// Initial condition. For the Gaussian kind
///
///   psi(r, 0) = sqrt(N_c) / (sigma_p sqrt(pi)) exp(-|r|^2 / (2 sigma_p^2))
///   n_R(r, 0) = P0 / gamma_R exp(-|r|^2 / (2 sigma_p^2))        (reservoir model only)
///
/// The same prefactor is used on 1D grids, where the integrated norm is
/// N_c / (sigma_p sqrt(pi)) rather than N_c.
struct InitSpec {
  InitKind kind = InitKind::gaussian;
  double N_c = 1.0;
  double sigma_p = 20.0;
  double P0 = 60.790;
  double gamma_R = 2.0 / 0.6582;

  friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

namespace detail {

inline ComplexField gaussian_condensate(const InitSpec& spec, const Grid& grid) {
  const double amplitude = std::sqrt(spec.N_c) / (spec.sigma_p * std::sqrt(std::numbers::pi));
  const double inv_two_var = 1.0 / (2.0 * spec.sigma_p * spec.sigma_p);
  ComplexField psi(grid);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      psi.at(i, j) = amplitude * std::exp(-(x * x + y * y) * inv_two_var);
    }
  }
  zero_dirichlet_edges(psi);
  return psi;
}

inline RealField gaussian_reservoir(const InitSpec& spec, const Grid& grid) {
  const double amplitude = spec.P0 / spec.gamma_R;
  const double inv_two_var = 1.0 / (2.0 * spec.sigma_p * spec.sigma_p);
  RealField n(grid);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      n.at(i, j) = amplitude * std::exp(-(x * x + y * y) * inv_two_var);
    }
  }
  return n;
}

}  // namespace detail

/// Build the t = 0 state. Condensate amplitudes on Dirichlet edges are set
/// to zero; the reservoir density is not.
inline SimState init_state(const InitSpec& spec, const Grid& grid, ModelTag tag) {
  if (!(spec.N_c >= 0.0)) throw ModelError("init: N_c must be >= 0");
  if (spec.kind == InitKind::zero) {
    switch (tag) {
      case ModelTag::cnrp1: return {zero_fields<Cnrp1Fields>(grid), 0.0};
      case ModelTag::cnrp1_spin: return {zero_fields<Cnrp1SpinFields>(grid), 0.0};
      case ModelTag::cnrp2: return {zero_fields<Cnrp2Fields>(grid), 0.0};
      case ModelTag::hinrp: return {zero_fields<HinrpFields>(grid), 0.0};
    }
  }

  if (tag == ModelTag::cnrp1 || tag == ModelTag::cnrp1_spin) {
    throw ModelError("init: " + std::string(to_string(tag)) +
                     " starts from zero fields; a gaussian initial state is not defined");
  }
  if (!(spec.sigma_p > 0.0)) throw ModelError("init: sigma_p must be > 0");

  if (tag == ModelTag::cnrp2) {
    return {Cnrp2Fields{detail::gaussian_condensate(spec, grid)}, 0.0};
  }
  if (!(spec.gamma_R > 0.0)) throw ModelError("init: gamma_R must be > 0");
  if (!(spec.P0 >= 0.0)) throw ModelError("init: P0 must be >= 0");
  return {HinrpFields{detail::gaussian_condensate(spec, grid),
                      detail::gaussian_reservoir(spec, grid)},
          0.0};
}

}  // namespace polariton
