#include <gtest/gtest.h>

#include <cmath>

#include "polariton/pump.hpp"

using namespace polariton;

namespace {

PumpSpec photon_pump() {
  PumpSpec p;
  p.F_p = 0.5;
  p.k_px = 1.0;
  p.delta_omega = 5.0;
  p.w = 10.0;
  return p;
}

TEST(PumpField, CentreOfUnshiftedSpot) {
  PumpSpec p;
  p.F_p = 0.5;
  const complex v = pump_field(p, 0.0, 0.0);
  EXPECT_EQ(v.real(), 0.5);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(PumpField, HandEvaluatedOffCentre) {
  const complex v = pump_field(photon_pump(), 10.0, 0.0);
  const double envelope = 0.5 * std::exp(-0.5);
  EXPECT_NEAR(v.real(), envelope * std::cos(10.0), 1e-15);
  EXPECT_NEAR(v.imag(), envelope * std::sin(10.0), 1e-15);
}

TEST(PumpField, TimePhaseRotatesBackwards) {
  const PumpSpec p = photon_pump();
  const complex v = pump_field(p, 3.0, 0.2);
  const complex expected = 0.5 * std::exp(-9.0 / 200.0) * std::exp(complex(0.0, 3.0 - 1.0));
  EXPECT_NEAR(std::abs(v - expected), 0.0, 1e-15);
}

TEST(PumpField, TwoDimensionalDotProductAndDistance) {
  PumpSpec p;
  p.F_p = 2.0;
  p.k_px = 0.5;
  p.k_py = -1.5;
  p.w = 3.0;
  p.x0 = 1.0;
  p.y0 = -2.0;
  const complex v = pump_field(p, 2.0, 1.0, 0.0);
  const double r2 = 1.0 + 9.0;
  const complex expected =
      2.0 * std::exp(-r2 / 18.0) * std::exp(complex(0.0, 0.5 * 2.0 - 1.5 * 1.0));
  EXPECT_NEAR(std::abs(v - expected), 0.0, 1e-15);
}

TEST(PumpField, EnvelopeDecaysMonotonically) {
  const PumpSpec p = photon_pump();
  double previous = std::abs(pump_field(p, 0.0, 0.0));
  for (double x = 0.5; x < 200.0; x += 0.5) {
    const double m = std::abs(pump_field(p, x, 0.0));
    EXPECT_LT(m, previous);
    previous = m;
  }
  EXPECT_LT(previous, 1e-80);
}

TEST(PumpField, MagnitudeIndependentOfTimeAndWavevector) {
  PumpSpec p = photon_pump();
  PumpSpec q = p;
  q.k_px = 7.0;
  for (double x : {-20.0, -3.0, 0.0, 4.5, 11.0}) {
    for (double t : {0.0, 0.37, 12.0}) {
      EXPECT_NEAR(std::abs(pump_field(p, x, t)), std::abs(pump_field(q, x, 0.0)), 1e-15);
    }
  }
}

TEST(PumpField, ReflectionConjugatesAtZeroTime) {
  const PumpSpec p = photon_pump();
  for (double x : {0.5, 3.0, 17.0}) {
    const complex a = pump_field(p, -x, 0.0);
    const complex b = std::conj(pump_field(p, x, 0.0));
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-16);
  }
}

TEST(PumpProfile, SamplesGridAtTimeZero) {
  const Grid g = make_grid_1d(5, 4.0);
  const ComplexField f = pump_profile(photon_pump(), g);
  for (std::size_t i = 0; i < g.nx; ++i) EXPECT_EQ(f[i], pump_field(photon_pump(), g.x(i), 0.0));
}

TEST(IncoherentPump, GaussianPeak) {
  const IncoherentPumpSpec p{60.790, 20.0, PumpProfile::gaussian};
  EXPECT_DOUBLE_EQ(incoherent_pump(p, 0.0), 60.790);
  EXPECT_NEAR(incoherent_pump(p, 20.0), 60.790 * std::exp(-0.5), 1e-12);
  EXPECT_NEAR(incoherent_pump(p, 12.0, 16.0), 60.790 * std::exp(-0.5), 1e-12);
}

TEST(IncoherentPump, ZeroAmplitude) {
  const IncoherentPumpSpec p{0.0, 20.0, PumpProfile::gaussian};
  for (double x : {-50.0, 0.0, 3.3}) EXPECT_EQ(incoherent_pump(p, x), 0.0);
}

TEST(IncoherentPump, UniformProfile) {
  const IncoherentPumpSpec p{60.790, 20.0, PumpProfile::uniform};
  EXPECT_EQ(incoherent_pump(p, 37.0), 60.790);
  EXPECT_EQ(incoherent_pump(p, -1e3, 5.0), 60.790);
}

TEST(PumpValidation, RejectsBadSpecs) {
  PumpSpec p;
  p.w = 0.0;
  EXPECT_THROW(validate(p), ModelError);
  p.w = 1.0;
  p.F_p = -1.0;
  EXPECT_THROW(validate(p), ModelError);
  EXPECT_THROW(validate(IncoherentPumpSpec{-1.0, 20.0, PumpProfile::gaussian}), ModelError);
  EXPECT_THROW(validate(IncoherentPumpSpec{1.0, 0.0, PumpProfile::gaussian}), ModelError);
}

// 10 nW = 6.24e13 meV/s = 62.4 meV/ps.
TEST(PowerConversion, FieldAmplitudeOneDimensional) {
  const double f = power_to_field_amplitude(units::ten_nanowatts_mev_per_ps_rounded, 100.0);
  EXPECT_NEAR(f, 0.2743642, 0.5e-6);
}

TEST(PowerConversion, FieldAmplitudeTwoDimensional) {
  const double f = power_to_field_amplitude(units::ten_nanowatts_mev_per_ps_rounded, 576.0);
  EXPECT_NEAR(f, 0.114318, 0.5e-6);
}

TEST(PowerConversion, FieldAmplitudeScalesAsSquareRoot) {
  const double a = power_to_field_amplitude(10.0, 50.0);
  const double b = power_to_field_amplitude(40.0, 50.0);
  EXPECT_NEAR(b / a, 2.0, 1e-14);
  EXPECT_EQ(power_to_field_amplitude(0.0, 100.0), 0.0);
}

TEST(PowerConversion, PumpRates) {
  EXPECT_NEAR(power_to_pump_rate(units::ten_nanowatts_mev_per_ps, 100.0), 0.6242, 0.5e-6);
  EXPECT_NEAR(power_to_pump_rate(units::ten_nanowatts_mev_per_ps, 576.0), 0.108368, 0.5e-6);
  EXPECT_EQ(power_to_pump_rate(0.0, 42.0), 0.0);
  EXPECT_NEAR(power_to_pump_rate(3.0 * 62.42, 100.0), 3.0 * 0.6242, 1e-14);
}

TEST(PowerConversion, RejectsInvalidArguments) {
  EXPECT_THROW(power_to_field_amplitude(-1.0, 100.0), ModelError);
  EXPECT_THROW(power_to_field_amplitude(1.0, 0.0), ModelError);
  EXPECT_THROW(power_to_pump_rate(-1.0, 100.0), ModelError);
  EXPECT_THROW(power_to_pump_rate(1.0, 0.0), ModelError);
}

}  // namespace
