#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"

namespace polariton {

/// Coherent Gaussian laser spot driving the photon (or lower polariton) field.
///
/// F(r, t) = F_p exp(i (k_p . r - delta_omega t)) exp(-|r - r0|^2 / (2 w^2))
///
/// delta_omega is the rotating-frame pump frequency in 1/ps. F_p is in
/// meV um^-1/2 on a 1D grid and meV um^-1 on a 2D grid.
struct PumpSpec {
  double F_p = 0.0;
  double k_px = 0.0;
  double k_py = 0.0;
  double delta_omega = 0.0;
  double w = 10.0;
  double x0 = 0.0;
  double y0 = 0.0;

  friend bool operator==(const PumpSpec&, const PumpSpec&) = default;
};

enum class PumpProfile { gaussian, uniform };

/// Spatial pumping rate P(r) of the incoherent reservoir drive.
struct IncoherentPumpSpec {
  double P0 = 0.0;
  double sigma_p = 20.0;
  PumpProfile profile = PumpProfile::gaussian;

  friend bool operator==(const IncoherentPumpSpec&, const IncoherentPumpSpec&) = default;
};

inline void validate(const PumpSpec& p) {
  if (!(p.w > 0.0)) throw ModelError("pump: spot width w must be > 0");
  if (!(p.F_p >= 0.0)) throw ModelError("pump: amplitude F_p must be >= 0");
}

inline void validate(const IncoherentPumpSpec& p) {
  if (!(p.P0 >= 0.0)) throw ModelError("incoherent pump: P0 must be >= 0");
  if (!(p.sigma_p > 0.0)) throw ModelError("incoherent pump: sigma_p must be > 0");
}

inline complex pump_field(const PumpSpec& p, double x, double y, double t) {
  const double rx = x - p.x0;
  const double ry = y - p.y0;
  const double envelope = p.F_p * std::exp(-(rx * rx + ry * ry) / (2.0 * p.w * p.w));
  const double phase = p.k_px * x + p.k_py * y - p.delta_omega * t;
  return {envelope * std::cos(phase), envelope * std::sin(phase)};
}

inline complex pump_field(const PumpSpec& p, double x, double t) {
  return pump_field(p, x, 0.0, t);
}

inline double incoherent_pump(const IncoherentPumpSpec& p, double x, double y = 0.0) {
  if (p.profile == PumpProfile::uniform) return p.P0;
  return p.P0 * std::exp(-(x * x + y * y) / (2.0 * p.sigma_p * p.sigma_p));
}

inline RealField incoherent_pump_field(const IncoherentPumpSpec& p, const Grid& grid) {
  RealField out(grid);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      out.at(i, j) = incoherent_pump(p, grid.x(i), grid.y(j));
    }
  }
  return out;
}

/// The time-independent part of the coherent pump, F_p e^{i k.r} e^{-r^2/2w^2},
/// sampled once per run. The time factor e^{-i delta_omega t} is applied per
/// stage by the model.
inline ComplexField pump_profile(const PumpSpec& p, const Grid& grid) {
  ComplexField out(grid);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      out.at(i, j) = pump_field(p, grid.x(i), grid.y(j), 0.0);
    }
  }
  return out;
}

// Unit conversions for laser power. The constants are rounded reference
// values, not CODATA; with them 10 nW maps to F_p = 0.2743642 (L = 100 um).
namespace units {

/// 10 nW expressed in meV/ps, as used for the pumping-rate conversion.
inline constexpr double ten_nanowatts_mev_per_ps = 62.42;
/// 10 nW expressed in meV/ps, as used for the field-amplitude conversion
/// (6.24e13 meV/s).
inline constexpr double ten_nanowatts_mev_per_ps_rounded = 62.4;

/// Speed of light as the bare number 3e8, applied to a power in meV/s and
/// eps0 in e^2/(meV um).
inline constexpr double light_speed = 3.0e8;
/// Vacuum permittivity, e^2 / (meV um).
inline constexpr double vacuum_permittivity = 55.2635e3;
inline constexpr double ps_per_s = 1.0e12;

}  // namespace units

/// Laser power (meV/ps) to coherent pump amplitude, F_p = sqrt(2P / (c eps0 L)).
/// `extent` is the wire length L (um) for 1D or the cavity area A (um^2) for 2D.
inline double power_to_field_amplitude(double power_mev_per_ps, double extent) {
  if (!(power_mev_per_ps >= 0.0)) {
    throw ModelError("power_to_field_amplitude: negative laser power");
  }
  if (!(extent > 0.0)) {
    throw ModelError("power_to_field_amplitude: extent must be > 0");
  }
  const double power_mev_per_s = power_mev_per_ps * units::ps_per_s;
  return std::sqrt(2.0 * power_mev_per_s /
                   (units::light_speed * units::vacuum_permittivity * extent));
}

/// Laser power (meV/ps) to reservoir pumping rate, P' = P / L or P / A.
inline double power_to_pump_rate(double power_mev_per_ps, double extent) {
  if (!(power_mev_per_ps >= 0.0)) {
    throw ModelError("power_to_pump_rate: negative laser power");
  }
  if (!(extent > 0.0)) {
    throw ModelError("power_to_pump_rate: extent must be > 0");
  }
  return power_mev_per_ps / extent;
}

}  // namespace polariton
