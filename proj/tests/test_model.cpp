#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "polariton/model.hpp"
#include "test_support.hpp"

using namespace polariton;
using polariton::testing::periodic_line;
using polariton::testing::random_complex;
using polariton::testing::random_real;

namespace {

constexpr complex kI(0.0, 1.0);

Cnrp1Params photon_params() {
  Cnrp1Params p;
  p.g = 1.132 * p.hbar * p.gamma_c;
  p.pump.F_p = 0.5;
  p.pump.k_px = 1.0;
  p.pump.delta_omega = 5.0;
  return p;
}

ComplexField uniform(const Grid& g, complex v) {
  return sample(g, [v](auto...) { return v; });
}

TEST(RhsCnrp1, ZeroStateSeesOnlyThePump) {
  const Grid g = make_grid_1d(201, 100.0);
  const Cnrp1Params p = photon_params();
  const double t = 0.3;
  const SimState s{zero_fields<Cnrp1Fields>(g), t};
  const auto d = rhs_cnrp1(s, p).as<Cnrp1Fields>();
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    EXPECT_EQ(d.psi_x[i], complex(0.0));
    const complex expected = -kI * pump_field(p.pump, g.x(i), t) / p.hbar;
    EXPECT_NEAR(std::abs(d.psi_c[i] - expected), 0.0, 1e-14);
  }
  EXPECT_EQ(d.psi_c[0], complex(0.0));
  EXPECT_EQ(d.psi_c[g.nx - 1], complex(0.0));
}

// d/dt (psi_x, psi_c) = (-i/hbar) M (psi_x, psi_c) for uniform fields.
TEST(RhsCnrp1, UniformLinearMatchesTwoByTwoMatrix) {
  const Grid g = periodic_line(16, 8.0);
  Cnrp1Params p = photon_params();
  p.g = 0.0;
  p.pump.F_p = 0.0;
  const complex a(0.3, -0.7);  // psi_x
  const complex b(-1.1, 0.4);  // psi_c
  const SimState s{Cnrp1Fields{uniform(g, b), uniform(g, a)}, 0.0};
  const auto d = rhs_cnrp1(s, p).as<Cnrp1Fields>();
  const complex m11 = p.delta - kI * p.hbar * p.gamma_x / 2.0;
  const complex m22 = -kI * p.hbar * p.gamma_c / 2.0;
  const complex dx = -kI / p.hbar * (m11 * a + p.omega_R * b);
  const complex dc = -kI / p.hbar * (p.omega_R * a + m22 * b);
  for (std::size_t i = 0; i < g.nx; ++i) {
    EXPECT_NEAR(std::abs(d.psi_x[i] - dx), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(d.psi_c[i] - dc), 0.0, 1e-13);
  }
}

TEST(RhsCnrp1, SingleModeNonlinearOscillator) {
  const Grid g = periodic_line(8, 4.0);
  Cnrp1Params p = photon_params();
  p.omega_R = 0.0;
  p.gamma_x = 0.0;
  p.pump.F_p = 0.0;
  p.g = 0.37;
  const complex a(0.6, 0.8);
  const SimState s{Cnrp1Fields{ComplexField(g), uniform(g, a)}, 0.0};
  const auto d = rhs_cnrp1(s, p).as<Cnrp1Fields>();
  const double rate = std::abs(a) * (p.g * std::norm(a) + p.delta) / p.hbar;
  for (std::size_t i = 0; i < g.nx; ++i) {
    EXPECT_NEAR(std::abs(d.psi_x[i]), rate, 1e-13);
    EXPECT_NEAR(std::real(std::conj(a) * d.psi_x[i]), 0.0, 1e-13);  // pure rotation
  }
}

TEST(RhsCnrp1, KineticTermUsesPhotonMass) {
  const Grid g = make_grid_1d(41, 20.0);
  Cnrp1Params p = photon_params();
  p.pump.F_p = 0.0;
  p.omega_R = 0.0;
  p.gamma_c = 0.0;
  const ComplexField psi = sample(g, [](double x) { return complex(x * x, 0.5 * x * x); });
  const SimState s{Cnrp1Fields{psi, ComplexField(g)}, 0.0};
  const auto d = rhs_cnrp1(s, p).as<Cnrp1Fields>();
  // -i/hbar * (-hbar^2/2m * 2 (1 + 0.5 i)) = i hbar/m (1 + 0.5 i)
  const complex expected = kI * p.hbar / p.m_c * complex(1.0, 0.5);
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    EXPECT_NEAR(std::abs(d.psi_c[i] - expected), 0.0, 1e-9 * std::abs(expected));
  }
}

TEST(RhsCnrp1, ConservativeLimitHasZeroNormRate) {
  std::mt19937_64 rng(5);
  const Grid g = make_grid_1d(201, 100.0);
  Cnrp1Params p = photon_params();
  p.gamma_c = 0.0;
  p.gamma_x = 0.0;
  p.pump.F_p = 0.0;
  p.g = 0.86;
  Cnrp1Fields f{random_complex(g, rng), random_complex(g, rng)};
  zero_dirichlet_edges(f.psi_c);
  zero_dirichlet_edges(f.psi_x);
  const SimState s{f, 0.0};
  const auto d = rhs_cnrp1(s, p).as<Cnrp1Fields>();
  double rate = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    const double a = 2.0 * std::real(std::conj(f.psi_c[i]) * d.psi_c[i]);
    const double b = 2.0 * std::real(std::conj(f.psi_x[i]) * d.psi_x[i]);
    rate += a + b;
    scale += std::abs(a) + std::abs(b);
  }
  EXPECT_LT(std::abs(rate), 1e-12 * scale);
}

TEST(RhsCnrp1, ErrorsOnWrongTagAndNonFiniteInput) {
  const Grid g = make_grid_1d(11, 5.0);
  const SimState wrong{zero_fields<Cnrp2Fields>(g), 0.0};
  EXPECT_THROW(rhs_cnrp1(wrong, photon_params()), ModelError);
  Cnrp1Fields f = zero_fields<Cnrp1Fields>(g);
  f.psi_x[3] = complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_THROW(rhs_cnrp1(SimState{f, 0.0}, photon_params()), ModelError);
  Cnrp1Fields mixed{ComplexField(g), ComplexField(make_grid_1d(11, 6.0))};
  EXPECT_THROW(rhs_cnrp1(SimState{mixed, 0.0}, photon_params()), ModelError);
}

TEST(RhsCnrp1, PureAndDeterministic) {
  std::mt19937_64 rng(9);
  const Grid g = make_grid_1d(31, 15.0);
  const SimState s{Cnrp1Fields{random_complex(g, rng), random_complex(g, rng)}, 1.25};
  const SimState copy = s;
  const SimState a = rhs_cnrp1(s, photon_params());
  const SimState b = rhs_cnrp1(s, photon_params());
  EXPECT_EQ(s, copy);
  EXPECT_EQ(a, b);
}

Cnrp1SpinParams spin_params() {
  Cnrp1SpinParams p;
  const double linewidth = p.hbar * p.gamma_c;
  p.g1 = 1.132 * linewidth;
  p.g2 = 0.1132 * linewidth;
  p.pump_plus.F_p = 0.5;
  p.pump_plus.k_px = 1.0;
  p.pump_plus.delta_omega = 5.0;
  p.pump_minus.F_p = 0.3;
  p.pump_minus.k_px = -0.5;
  p.pump_minus.delta_omega = 2.0;
  p.pump_minus.w = 7.0;
  return p;
}

TEST(RhsCnrp1Spin, DecouplesToSpinlessModel) {
  std::mt19937_64 rng(21);
  const Grid g = make_grid_1d(41, 20.0);
  Cnrp1SpinParams sp = spin_params();
  sp.g2 = 0.0;
  sp.pump_minus.F_p = 0.0;
  Cnrp1Params p = photon_params();
  p.g = sp.g1;
  p.pump = sp.pump_plus;
  const ComplexField c = random_complex(g, rng);
  const ComplexField x = random_complex(g, rng);
  const SimState spin{Cnrp1SpinFields{c, ComplexField(g), x, ComplexField(g)}, 0.7};
  const SimState plain{Cnrp1Fields{c, x}, 0.7};
  const auto ds = rhs_cnrp1_spin(spin, sp).as<Cnrp1SpinFields>();
  const auto dp = rhs_cnrp1(plain, p).as<Cnrp1Fields>();
  EXPECT_EQ(ds.psi_c_plus, dp.psi_c);
  EXPECT_EQ(ds.psi_x_plus, dp.psi_x);
  for (const auto& v : ds.psi_c_minus.values()) EXPECT_EQ(v, complex(0.0));
  for (const auto& v : ds.psi_x_minus.values()) EXPECT_EQ(v, complex(0.0));
}

TEST(RhsCnrp1Spin, ZeroFieldsSeeOnlyPumps) {
  const Grid g = make_grid_1d(51, 25.0);
  const Cnrp1SpinParams p = spin_params();
  const double t = 1.1;
  const auto d =
      rhs_cnrp1_spin(SimState{zero_fields<Cnrp1SpinFields>(g), t}, p).as<Cnrp1SpinFields>();
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    EXPECT_NEAR(std::abs(d.psi_c_plus[i] + kI * pump_field(p.pump_plus, g.x(i), t) / p.hbar), 0.0,
                1e-14);
    EXPECT_NEAR(std::abs(d.psi_c_minus[i] + kI * pump_field(p.pump_minus, g.x(i), t) / p.hbar),
                0.0, 1e-14);
    EXPECT_EQ(d.psi_x_plus[i], complex(0.0));
    EXPECT_EQ(d.psi_x_minus[i], complex(0.0));
  }
}

TEST(RhsCnrp1Spin, SpinExchangeEquivariance) {
  std::mt19937_64 rng(99);
  const Grid g = make_grid_1d(201, 100.0);
  const Cnrp1SpinParams p = spin_params();
  Cnrp1SpinParams swapped_p = p;
  std::swap(swapped_p.pump_plus, swapped_p.pump_minus);
  for (int trial = 0; trial < 100; ++trial) {
    Cnrp1SpinFields f{random_complex(g, rng), random_complex(g, rng), random_complex(g, rng),
                      random_complex(g, rng)};
    const Cnrp1SpinFields swapped{f.psi_c_minus, f.psi_c_plus, f.psi_x_minus, f.psi_x_plus};
    const double t = 0.05 * trial;
    const auto d = rhs_cnrp1_spin(SimState{f, t}, p).as<Cnrp1SpinFields>();
    const auto e = rhs_cnrp1_spin(SimState{swapped, t}, swapped_p).as<Cnrp1SpinFields>();
    ASSERT_EQ(e.psi_c_plus, d.psi_c_minus);
    ASSERT_EQ(e.psi_c_minus, d.psi_c_plus);
    ASSERT_EQ(e.psi_x_plus, d.psi_x_minus);
    ASSERT_EQ(e.psi_x_minus, d.psi_x_plus);
  }
}

Cnrp2Params polariton_params() {
  Cnrp2Params p;
  p.pump.F_p = 0.05;
  return p;
}

TEST(RhsCnrp2, ZeroStateIsSourceOnly) {
  const Grid g = make_grid_1d(201, 100.0);
  Cnrp2Params p = polariton_params();
  p.eta = 0.8;
  p.pump.delta_omega = 1.5;
  const double t = 0.4;
  const auto d = rhs_cnrp2(SimState{zero_fields<Cnrp2Fields>(g), t}, p).as<Cnrp2Fields>();
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    const complex expected = p.eta * pump_field(p.pump, g.x(i), t) / p.hbar;
    EXPECT_NEAR(std::abs(d.psi[i] - expected), 0.0, 1e-15);
  }
}

TEST(RhsCnrp2, UniformLinearStateDecays) {
  const Grid g = periodic_line(10, 5.0);
  Cnrp2Params p = polariton_params();
  p.g = 0.0;
  p.pump.F_p = 0.0;
  const complex a(0.4, -0.9);
  const auto d = rhs_cnrp2(SimState{Cnrp2Fields{uniform(g, a)}, 0.0}, p).as<Cnrp2Fields>();
  for (const auto& v : d.psi.values()) {
    EXPECT_NEAR(std::abs(v + 0.5 * p.gamma_c * a), 0.0, 1e-14);
  }
}

TEST(RhsCnrp2, NonlinearityIsPhaseOnly) {
  const Grid g = periodic_line(10, 5.0);
  Cnrp2Params p = polariton_params();
  p.gamma_c = 0.0;
  p.pump.F_p = 0.0;
  p.g = 7.596;
  const complex a(1.2, 0.5);
  const auto d = rhs_cnrp2(SimState{Cnrp2Fields{uniform(g, a)}, 0.0}, p).as<Cnrp2Fields>();
  for (const auto& v : d.psi.values()) {
    EXPECT_NEAR(2.0 * std::real(std::conj(a) * v), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(v), p.g * std::norm(a) * std::abs(a), 1e-12);
  }
}

TEST(RhsCnrp2, GaugeCovariantWithoutPump) {
  std::mt19937_64 rng(4);
  const Grid g = make_grid_2d(15, 12, 3.0, 2.0);
  Cnrp2Params p = polariton_params();
  p.pump.F_p = 0.0;
  const ComplexField psi = random_complex(g, rng);
  const complex phase = std::exp(complex(0.0, 0.83));
  ComplexField rotated(g);
  for (std::size_t k = 0; k < g.size(); ++k) rotated[k] = phase * psi[k];
  const auto d = rhs_cnrp2(SimState{Cnrp2Fields{psi}, 0.0}, p).as<Cnrp2Fields>();
  const auto e = rhs_cnrp2(SimState{Cnrp2Fields{rotated}, 0.0}, p).as<Cnrp2Fields>();
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(std::abs(e.psi[k] - phase * d.psi[k]), 0.0, 1e-10 * (1.0 + std::abs(d.psi[k])));
  }
}

TEST(RhsCnrp2, KineticSignFlipsOnlyTheLaplacianTerm) {
  std::mt19937_64 rng(8);
  const Grid g = make_grid_1d(41, 20.0);
  Cnrp2Params minus = polariton_params();
  Cnrp2Params plus = minus;
  plus.kinetic_sign = +1;
  const ComplexField psi = random_complex(g, rng);
  const ComplexField lap = laplacian(psi);
  const auto a = rhs_cnrp2(SimState{Cnrp2Fields{psi}, 0.2}, minus).as<Cnrp2Fields>();
  const auto b = rhs_cnrp2(SimState{Cnrp2Fields{psi}, 0.2}, plus).as<Cnrp2Fields>();
  const double coeff = minus.hbar / minus.m;  // (1/hbar) hbar^2 / 2m, doubled
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    const complex expected = -kI * coeff * lap[i];
    EXPECT_NEAR(std::abs((b.psi[i] - a.psi[i]) - expected), 0.0, 1e-9 * std::abs(expected));
  }
}

TEST(RhsCnrp2, ExternalPotentialShiftsEnergy) {
  const Grid g = periodic_line(6, 3.0);
  Cnrp2Params p = polariton_params();
  p.pump.F_p = 0.0;
  p.g = 0.0;
  p.gamma_c = 0.0;
  p.V_ext = RealField(g, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
  const complex a(1.0, 0.0);
  const auto d = rhs_cnrp2(SimState{Cnrp2Fields{uniform(g, a)}, 0.0}, p).as<Cnrp2Fields>();
  for (std::size_t i = 0; i < g.nx; ++i) {
    EXPECT_NEAR(std::abs(d.psi[i] - (-kI * static_cast<double>(i) / p.hbar)), 0.0, 1e-14);
  }
  p.V_ext = RealField(make_grid_1d(7, 3.0));
  EXPECT_THROW(rhs_cnrp2(SimState{Cnrp2Fields{uniform(g, a)}, 0.0}, p), ModelError);
}

TEST(Cnrp2Params, RejectsInvalidKineticSign) {
  Cnrp2Params p = polariton_params();
  p.kinetic_sign = 0;
  EXPECT_THROW(validate(p), ModelError);
}

HinrpParams reservoir_params() { return HinrpParams{}; }

TEST(RhsHinrp, VacuumIsFixed) {
  const Grid g = make_grid_1d(51, 25.0);
  HinrpParams p = reservoir_params();
  p.pump.P0 = 0.0;
  const auto d = rhs_hinrp(SimState{zero_fields<HinrpFields>(g), 0.0}, p).as<HinrpFields>();
  for (const auto& v : d.psi.values()) EXPECT_EQ(v, complex(0.0));
  for (double v : d.n_R.values()) EXPECT_EQ(v, 0.0);
}

TEST(RhsHinrp, EmptyCondensateReservoirRelaxes) {
  const Grid g = make_grid_1d(51, 25.0);
  const HinrpParams p = reservoir_params();
  RealField n(g);
  for (auto& v : n.values()) v = 12.5;
  const auto d = rhs_hinrp(SimState{HinrpFields{ComplexField(g), n}, 0.0}, p).as<HinrpFields>();
  for (std::size_t i = 0; i < g.nx; ++i) {
    EXPECT_NEAR(d.n_R[i], incoherent_pump(p.pump, g.x(i)) - p.gamma_R * 12.5, 1e-12);
  }
}

// Uniform pump P: n* = gamma_c / R and |psi|^2* = (P - gamma_R n*) / gamma_c.
TEST(RhsHinrp, AnalyticUniformFixedPoint) {
  const Grid g = periodic_line(12, 6.0);
  HinrpParams p = reservoir_params();
  p.pump.profile = PumpProfile::uniform;
  const double n_star = p.gamma_c / p.R;
  const double rho_star = (p.pump.P0 - p.gamma_R * n_star) / p.gamma_c;
  EXPECT_NEAR(n_star, 10.0, 1e-12);
  EXPECT_NEAR(rho_star, 40.02, 0.005);  // quoted to four figures
  const complex psi0 = std::polar(std::sqrt(rho_star), 0.4);
  RealField n(g);
  for (auto& v : n.values()) v = n_star;
  const auto d =
      rhs_hinrp(SimState{HinrpFields{uniform(g, psi0), n}, 0.0}, p).as<HinrpFields>();
  for (std::size_t i = 0; i < g.nx; ++i) {
    EXPECT_LT(std::abs(d.n_R[i]) / p.pump.P0, 1e-12);
    const double density_rate = 2.0 * std::real(std::conj(psi0) * d.psi[i]);
    EXPECT_LT(std::abs(density_rate) / (p.gamma_c * rho_star), 1e-12);
  }
}

TEST(RhsHinrp, BelowThresholdGainIsNegative) {
  const HinrpParams p = reservoir_params();
  const double threshold = p.gamma_R * p.gamma_c / p.R;
  for (double P : {0.0, 0.25 * threshold, 0.999 * threshold}) {
    const double n_ss = P / p.gamma_R;
    EXPECT_LT(0.5 * (p.R * n_ss - p.gamma_c), 0.0) << "P=" << P;
  }
  EXPECT_GT(p.pump.P0, threshold);  // the reference pump lies above threshold
}

TEST(RhsHinrp, ReservoirBlueshiftAndGain) {
  const Grid g = periodic_line(4, 2.0);
  HinrpParams p = reservoir_params();
  p.pump.profile = PumpProfile::uniform;
  p.g = 0.0;
  p.g_R = 0.3;
  p.E0 = 1.5;
  const complex a(0.5, 0.0);
  RealField n(g);
  for (auto& v : n.values()) v = 4.0;
  const auto d = rhs_hinrp(SimState{HinrpFields{uniform(g, a), n}, 0.0}, p).as<HinrpFields>();
  const double energy = p.E0 + p.hbar * p.G * p.pump.P0 + p.hbar * p.g_R * 4.0;
  const complex expected = -kI * energy / p.hbar * a + 0.5 * (p.R * 4.0 - p.gamma_c) * a;
  for (const auto& v : d.psi.values()) EXPECT_NEAR(std::abs(v - expected), 0.0, 1e-13);
  for (double v : d.n_R.values()) {
    EXPECT_NEAR(v, p.pump.P0 - p.gamma_R * 4.0 - p.R * 4.0 * 0.25, 1e-12);
  }
}

TEST(RhsHinrp, ReservoirEdgesAreNotPinned) {
  const Grid g = make_grid_1d(21, 10.0);
  const HinrpParams p = reservoir_params();
  const auto d = rhs_hinrp(SimState{zero_fields<HinrpFields>(g), 0.0}, p).as<HinrpFields>();
  EXPECT_GT(d.n_R[0], 0.0);
  EXPECT_EQ(d.psi[0], complex(0.0));
}

TEST(Rhs, DispatchesOnParameters) {
  std::mt19937_64 rng(1);
  const Grid g = make_grid_1d(21, 10.0);
  const SimState s{HinrpFields{random_complex(g, rng), random_real(g, rng, 0.0, 5.0)}, 0.0};
  EXPECT_EQ(rhs(s, ModelParams{reservoir_params()}), rhs_hinrp(s, reservoir_params()));
  EXPECT_THROW(rhs(s, ModelParams{polariton_params()}), ModelError);
}

}  // namespace
