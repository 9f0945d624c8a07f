#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"
#include "polariton/pump.hpp"
#include "polariton/state.hpp"

namespace polariton {

/// Reduced Planck constant, meV ps.
inline constexpr double kHbar = 0.6582;
/// Reference mass m0, meV / (um/ps)^2.
inline constexpr double kMassUnit = 5.677e3;

/// Coherently pumped photon/exciton pair without spin.
///
///   i hbar d(psi_c)/dt = Omega_R psi_x + F + (-hbar^2 lap / 2m_c - i hbar gamma_c / 2) psi_c
///   i hbar d(psi_x)/dt = Omega_R psi_c + (g |psi_x|^2 + delta - i hbar gamma_x / 2) psi_x
struct Cnrp1Params {
  double hbar = kHbar;
  double omega_R = 4.4;   // meV
  double gamma_c = 0.1;   // 1/ps
  double gamma_x = 0.01;  // 1/ps
  double m_c = kMassUnit * 2e-5;
  double g = 0.0;      // meV um
  double delta = 5.0;  // meV
  PumpSpec pump;

  friend bool operator==(const Cnrp1Params&, const Cnrp1Params&) = default;
};

/// As Cnrp1Params, with same-spin (g1) and opposite-spin (g2) exciton
/// interactions and one pump per polarisation.
struct Cnrp1SpinParams {
  double hbar = kHbar;
  double omega_R = 4.4;
  double gamma_c = 0.1;
  double gamma_x = 0.01;
  double m_c = kMassUnit * 2e-5;
  double g1 = 0.0;
  double g2 = 0.0;
  double delta = 5.0;
  PumpSpec pump_plus;
  PumpSpec pump_minus;

  friend bool operator==(const Cnrp1SpinParams&, const Cnrp1SpinParams&) = default;
};

/// Driven-dissipative condensate with a coherent source.
///
///   i hbar d(psi)/dt = { s hbar^2 lap / 2m + V - i hbar gamma_c / 2 + hbar g |psi|^2 } psi
///                      + i eta F
///
/// `kinetic_sign` s = -1 is the usual dispersion; +1 gives the literal
/// positive-Laplacian form.
struct Cnrp2Params {
  double hbar = kHbar;
  double m = kMassUnit * 7.44e-5;
  double gamma_c = 0.5 / kHbar;
  double g = 0.86;
  double eta = 1.0;
  int kinetic_sign = -1;
  std::optional<RealField> V_ext;
  PumpSpec pump;

  friend bool operator==(const Cnrp2Params&, const Cnrp2Params&) = default;
};

/// Condensate fed by an incoherently pumped reservoir n_R with linear gain
/// R[n_R] = R n_R.
///
///   i hbar d(psi)/dt = { E0 - hbar^2 lap / 2m + (i hbar / 2)(R n_R - gamma_c) + V
///                        + hbar g |psi|^2 + V_R } psi
///   d(n_R)/dt        = P - gamma_R n_R - R n_R |psi|^2
///   V_R              = hbar G P + hbar g_R n_R
struct HinrpParams {
  double hbar = kHbar;
  double E0 = 0.0;
  double m = kMassUnit * 7.44e-5;
  double gamma_c = 0.5 / kHbar;
  double gamma_R = 2.0 / kHbar;
  double R = 0.05 / kHbar;
  double g = 0.86;
  double g_R = 0.0;
  double G = 0.0175;
  std::optional<RealField> V_ext;
  IncoherentPumpSpec pump{.P0 = 60.790, .sigma_p = 20.0, .profile = PumpProfile::gaussian};

  friend bool operator==(const HinrpParams&, const HinrpParams&) = default;
};

using ModelParams = std::variant<Cnrp1Params, Cnrp1SpinParams, Cnrp2Params, HinrpParams>;

inline ModelTag tag_of(const ModelParams& p) {
  switch (p.index()) {
    case 0: return ModelTag::cnrp1;
    case 1: return ModelTag::cnrp1_spin;
    case 2: return ModelTag::cnrp2;
    default: return ModelTag::hinrp;
  }
}

/// Effective kinetic mass of the model, used for the CFL check.
inline double kinetic_mass(const ModelParams& p) {
  return std::visit(
      [](const auto& q) {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, Cnrp1Params> || std::is_same_v<Q, Cnrp1SpinParams>) {
          return q.m_c;
        } else {
          return q.m;
        }
      },
      p);
}

inline double hbar_of(const ModelParams& p) {
  return std::visit([](const auto& q) { return q.hbar; }, p);
}

namespace detail {

// Plain complex product without the NaN-recovery branch of operator*.
inline complex cmul(complex a, complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// -i z
inline complex minus_i(complex z) noexcept { return {z.imag(), -z.real()}; }

inline double norm2(complex z) noexcept { return z.real() * z.real() + z.imag() * z.imag(); }

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ModelError(std::string(what) + " must be > 0");
}

inline void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0)) throw ModelError(std::string(what) + " must be >= 0");
}

inline void check_potential(const std::optional<RealField>& v, const Grid& grid) {
  if (v && !(v->grid() == grid)) throw ModelError("V_ext lives on a different grid");
}

// e^{-i delta_omega t}
inline complex pump_phase(const PumpSpec& p, double t) {
  const double phase = -p.delta_omega * t;
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace detail

inline void validate(const Cnrp1Params& p) {
  detail::require_positive(p.hbar, "hbar");
  detail::require_positive(p.m_c, "m_c");
  detail::require_non_negative(p.gamma_c, "gamma_c");
  detail::require_non_negative(p.gamma_x, "gamma_x");
  validate(p.pump);
}

inline void validate(const Cnrp1SpinParams& p) {
  detail::require_positive(p.hbar, "hbar");
  detail::require_positive(p.m_c, "m_c");
  detail::require_non_negative(p.gamma_c, "gamma_c");
  detail::require_non_negative(p.gamma_x, "gamma_x");
  validate(p.pump_plus);
  validate(p.pump_minus);
}

inline void validate(const Cnrp2Params& p) {
  detail::require_positive(p.hbar, "hbar");
  detail::require_positive(p.m, "m");
  detail::require_non_negative(p.gamma_c, "gamma_c");
  if (p.kinetic_sign != -1 && p.kinetic_sign != 1) {
    throw ModelError("kinetic_sign must be -1 or +1");
  }
  if (!std::isfinite(p.eta)) throw ModelError("eta must be finite");
  validate(p.pump);
}

inline void validate(const HinrpParams& p) {
  detail::require_positive(p.hbar, "hbar");
  detail::require_positive(p.m, "m");
  detail::require_non_negative(p.gamma_c, "gamma_c");
  detail::require_positive(p.gamma_R, "gamma_R");
  detail::require_non_negative(p.R, "R");
  validate(p.pump);
}

inline void validate(const ModelParams& p) {
  std::visit([](const auto& q) { validate(q); }, p);
}

// The model classes below bind parameters to a grid once (sampling the pump
// envelopes and potentials) and then evaluate d(fields)/dt. They are
// immutable after construction and safe to share between threads.

class Cnrp1Model {
 public:
  using fields_type = Cnrp1Fields;

  Cnrp1Model(Cnrp1Params params, const Grid& grid)
      : p_(std::move(params)), grid_(grid), pump_(pump_profile(p_.pump, grid)) {
    validate(p_);
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const Cnrp1Params& params() const noexcept { return p_; }

  [[nodiscard]] Cnrp1Fields operator()(const Cnrp1Fields& y, double t) const {
    const ComplexField lap_c = laplacian(y.psi_c);
    Cnrp1Fields d{ComplexField(grid_), ComplexField(grid_)};
    const double inv_hbar = 1.0 / p_.hbar;
    const double kinetic = p_.hbar * p_.hbar / (2.0 * p_.m_c);
    const complex phase = detail::pump_phase(p_.pump, t);
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const complex c = y.psi_c[k];
      const complex x = y.psi_x[k];
      const complex energy_c = p_.omega_R * x + detail::cmul(pump_[k], phase) - kinetic * lap_c[k];
      d.psi_c[k] = inv_hbar * detail::minus_i(energy_c) - (0.5 * p_.gamma_c) * c;
      const complex energy_x = p_.omega_R * c + (p_.g * detail::norm2(x) + p_.delta) * x;
      d.psi_x[k] = inv_hbar * detail::minus_i(energy_x) - (0.5 * p_.gamma_x) * x;
    }
    zero_dirichlet_edges(d.psi_c);
    zero_dirichlet_edges(d.psi_x);
    return d;
  }

 private:
  Cnrp1Params p_;
  Grid grid_;
  ComplexField pump_;
};

class Cnrp1SpinModel {
 public:
  using fields_type = Cnrp1SpinFields;

  Cnrp1SpinModel(Cnrp1SpinParams params, const Grid& grid)
      : p_(std::move(params)),
        grid_(grid),
        pump_plus_(pump_profile(p_.pump_plus, grid)),
        pump_minus_(pump_profile(p_.pump_minus, grid)) {
    validate(p_);
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const Cnrp1SpinParams& params() const noexcept { return p_; }

  [[nodiscard]] Cnrp1SpinFields operator()(const Cnrp1SpinFields& y, double t) const {
    Cnrp1SpinFields d = zero_fields<Cnrp1SpinFields>(grid_);
    photon(y.psi_c_plus, y.psi_x_plus, pump_plus_, detail::pump_phase(p_.pump_plus, t),
           d.psi_c_plus);
    photon(y.psi_c_minus, y.psi_x_minus, pump_minus_, detail::pump_phase(p_.pump_minus, t),
           d.psi_c_minus);
    exciton(y.psi_x_plus, y.psi_x_minus, y.psi_c_plus, d.psi_x_plus);
    exciton(y.psi_x_minus, y.psi_x_plus, y.psi_c_minus, d.psi_x_minus);
    return d;
  }

 private:
  void photon(const ComplexField& c, const ComplexField& x, const ComplexField& pump,
              complex phase, ComplexField& out) const {
    const ComplexField lap = laplacian(c);
    const double inv_hbar = 1.0 / p_.hbar;
    const double kinetic = p_.hbar * p_.hbar / (2.0 * p_.m_c);
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const complex energy = p_.omega_R * x[k] + detail::cmul(pump[k], phase) - kinetic * lap[k];
      out[k] = inv_hbar * detail::minus_i(energy) - (0.5 * p_.gamma_c) * c[k];
    }
    zero_dirichlet_edges(out);
  }

  // Same-spin exciton `x`, opposite-spin exciton `other`, same-spin photon `c`.
  void exciton(const ComplexField& x, const ComplexField& other, const ComplexField& c,
               ComplexField& out) const {
    const double inv_hbar = 1.0 / p_.hbar;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const double shift =
          p_.g1 * detail::norm2(x[k]) + p_.g2 * detail::norm2(other[k]) + p_.delta;
      const complex energy = p_.omega_R * c[k] + shift * x[k];
      out[k] = inv_hbar * detail::minus_i(energy) - (0.5 * p_.gamma_x) * x[k];
    }
    zero_dirichlet_edges(out);
  }

  Cnrp1SpinParams p_;
  Grid grid_;
  ComplexField pump_plus_;
  ComplexField pump_minus_;
};

class Cnrp2Model {
 public:
  using fields_type = Cnrp2Fields;

  Cnrp2Model(Cnrp2Params params, const Grid& grid)
      : p_(std::move(params)), grid_(grid), pump_(pump_profile(p_.pump, grid)) {
    validate(p_);
    detail::check_potential(p_.V_ext, grid_);
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const Cnrp2Params& params() const noexcept { return p_; }

  [[nodiscard]] Cnrp2Fields operator()(const Cnrp2Fields& y, double t) const {
    const ComplexField lap = laplacian(y.psi);
    const RealField* potential = p_.V_ext ? &*p_.V_ext : nullptr;
    Cnrp2Fields d{ComplexField(grid_)};
    const double inv_hbar = 1.0 / p_.hbar;
    const double kinetic = p_.kinetic_sign * p_.hbar * p_.hbar / (2.0 * p_.m);
    const complex source = (p_.eta * inv_hbar) * detail::pump_phase(p_.pump, t);
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const complex psi = y.psi[k];
      const double v = potential ? (*potential)[k] : 0.0;
      const complex energy =
          kinetic * lap[k] + (v + p_.hbar * p_.g * detail::norm2(psi)) * psi;
      d.psi[k] = inv_hbar * detail::minus_i(energy) - (0.5 * p_.gamma_c) * psi +
                 detail::cmul(source, pump_[k]);
    }
    zero_dirichlet_edges(d.psi);
    return d;
  }

 private:
  Cnrp2Params p_;
  Grid grid_;
  ComplexField pump_;
};

class HinrpModel {
 public:
  using fields_type = HinrpFields;

  HinrpModel(HinrpParams params, const Grid& grid)
      : p_(std::move(params)), grid_(grid), pump_(incoherent_pump_field(p_.pump, grid)) {
    validate(p_);
    detail::check_potential(p_.V_ext, grid_);
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const HinrpParams& params() const noexcept { return p_; }
  [[nodiscard]] const RealField& pump_rate() const noexcept { return pump_; }

  [[nodiscard]] HinrpFields operator()(const HinrpFields& y, double /*t*/) const {
    const ComplexField lap = laplacian(y.psi);
    const RealField* potential = p_.V_ext ? &*p_.V_ext : nullptr;
    HinrpFields d{ComplexField(grid_), RealField(grid_)};
    const double inv_hbar = 1.0 / p_.hbar;
    const double kinetic = p_.hbar * p_.hbar / (2.0 * p_.m);
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const complex psi = y.psi[k];
      const double n = y.n_R[k];
      const double P = pump_[k];
      const double density = detail::norm2(psi);
      const double v = potential ? (*potential)[k] : 0.0;
      const double v_reservoir = p_.hbar * p_.G * P + p_.hbar * p_.g_R * n;
      const double gain = p_.R * n;
      const complex energy =
          -kinetic * lap[k] + (p_.E0 + v + p_.hbar * p_.g * density + v_reservoir) * psi;
      d.psi[k] = inv_hbar * detail::minus_i(energy) + (0.5 * (gain - p_.gamma_c)) * psi;
      d.n_R[k] = P - p_.gamma_R * n - gain * density;
    }
    zero_dirichlet_edges(d.psi);
    return d;
  }

 private:
  HinrpParams p_;
  Grid grid_;
  RealField pump_;
};

using Model = std::variant<Cnrp1Model, Cnrp1SpinModel, Cnrp2Model, HinrpModel>;

inline Model make_model(const ModelParams& params, const Grid& grid) {
  return std::visit(
      [&](const auto& p) -> Model {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Cnrp1Params>) return Cnrp1Model(p, grid);
        else if constexpr (std::is_same_v<P, Cnrp1SpinParams>) return Cnrp1SpinModel(p, grid);
        else if constexpr (std::is_same_v<P, Cnrp2Params>) return Cnrp2Model(p, grid);
        else return HinrpModel(p, grid);
      },
      params);
}

namespace detail {

template <FieldCollection Fields>
void check_state(const SimState& s, const char* op) {
  const Fields& f = s.as<Fields>();
  const Grid& g = s.grid();
  for_each_member(
      [&](const auto& m) {
        if (!(m.grid() == g)) {
          throw ModelError(std::string(op) + ": fields do not share one grid");
        }
      },
      f);
  if (!all_finite(f)) throw ModelError(std::string(op) + ": non-finite value in input state");
}

template <class ModelT>
SimState evaluate(const SimState& s, const typename ModelT::fields_type& f, const ModelT& m) {
  return SimState{m(f, s.t), s.t};
}

}  // namespace detail

// Stand-alone right-hand sides on a SimState. These build the bound model on
// every call; the stepper holds a prepared Model instead.

inline SimState rhs_cnrp1(const SimState& s, const Cnrp1Params& p) {
  detail::check_state<Cnrp1Fields>(s, "rhs_cnrp1");
  return detail::evaluate(s, s.as<Cnrp1Fields>(), Cnrp1Model(p, s.grid()));
}

inline SimState rhs_cnrp1_spin(const SimState& s, const Cnrp1SpinParams& p) {
  detail::check_state<Cnrp1SpinFields>(s, "rhs_cnrp1_spin");
  return detail::evaluate(s, s.as<Cnrp1SpinFields>(), Cnrp1SpinModel(p, s.grid()));
}

inline SimState rhs_cnrp2(const SimState& s, const Cnrp2Params& p) {
  detail::check_state<Cnrp2Fields>(s, "rhs_cnrp2");
  return detail::evaluate(s, s.as<Cnrp2Fields>(), Cnrp2Model(p, s.grid()));
}

inline SimState rhs_hinrp(const SimState& s, const HinrpParams& p) {
  detail::check_state<HinrpFields>(s, "rhs_hinrp");
  return detail::evaluate(s, s.as<HinrpFields>(), HinrpModel(p, s.grid()));
}

inline SimState rhs(const SimState& s, const ModelParams& p) {
  return std::visit(
      [&](const auto& q) -> SimState {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, Cnrp1Params>) return rhs_cnrp1(s, q);
        else if constexpr (std::is_same_v<Q, Cnrp1SpinParams>) return rhs_cnrp1_spin(s, q);
        else if constexpr (std::is_same_v<Q, Cnrp2Params>) return rhs_cnrp2(s, q);
        else return rhs_hinrp(s, q);
      },
      p);
}

}  // namespace polariton
