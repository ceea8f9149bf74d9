#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_complex.hpp>

#include <random>

#include "edpp/theta.hpp"

using namespace edpp;
using mp = boost::multiprecision::cpp_complex_50;
using mpr = boost::multiprecision::cpp_bin_float_50;

namespace {

mp to_mp(cplx v) { return mp(mpr(v.real()), mpr(v.imag())); }
cplx from_mp(const mp& v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

// plain 50-digit series in the nome q = e^{i pi tau}
cplx theta_oracle(int mu, cplx v_d, cplx tau_d) {
  const mpr pi = boost::multiprecision::default_ops::get_constant_pi<mpr::backend_type>();
  const mp i(0, 1), v = to_mp(v_d), tau = to_mp(tau_d);
  mp s = (mu == 0 || mu == 3) ? mp(1) : mp(0);
  for (int n = 0; n < 80; ++n) {
    const mpr half = mpr(n) + mpr(0.5);
    switch (mu) {
      case 1: s += (n % 2 ? -2 : 2) * exp(i * pi * tau * half * half) * sin(mpr(2 * n + 1) * pi * v); break;
      case 2: s += 2 * exp(i * pi * tau * half * half) * cos(mpr(2 * n + 1) * pi * v); break;
      default:
        if (n == 0) break;
        s += (mu == 0 && n % 2 ? -2 : 2) * exp(i * pi * tau * mpr(n) * mpr(n)) * cos(mpr(2 * n) * pi * v);
    }
  }
  return from_mp(s);
}

cplx eta_oracle(cplx tau_d) {
  const mpr pi = boost::multiprecision::default_ops::get_constant_pi<mpr::backend_type>();
  const mp i(0, 1), tau = to_mp(tau_d);
  mp p = exp(i * pi * tau / 12);
  for (int n = 1; n < 400; ++n) p *= 1 - exp(2 * i * pi * tau * mpr(n));
  return from_mp(p);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Theta, MatchesMultiprecisionSeries) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int c = 0; c < 40; ++c) {
    const cplx tau(0.5 * u(rng), 0.6 + 0.5 * (u(rng) + 1.0));
    const cplx v(u(rng), 0.5 * u(rng) * tau.imag());
    for (int mu = 0; mu < 4; ++mu) {
      EXPECT_LT(rel(theta_eval(theta_index(mu), v, ModularTau(tau)), theta_oracle(mu, v, tau)), 1e-12)
          << "mu=" << mu << " v=" << v << " tau=" << tau;
    }
  }
}

TEST(Theta, EtaMatchesMultiprecisionProduct) {
  for (cplx tau : {cplx(0, 1), cplx(0.3, 0.8), cplx(-0.45, 0.4), cplx(0, 2.5)}) {
    EXPECT_LT(rel(dedekind_eta(ModularTau(tau)), eta_oracle(tau)), 1e-13) << tau;
    EXPECT_NEAR(std::exp(log_dedekind_eta(ModularTau(tau))).real(), eta_oracle(tau).real(), 1e-13);
  }
}

TEST(Theta, EtaAtIIsKnownConstant) {
  // Gamma(1/4) / (2 pi^{3/4})
  const double expect = std::tgamma(0.25) / (2.0 * std::pow(kPi, 0.75));
  EXPECT_NEAR(dedekind_eta(ModularTau(0.0, 1.0)).real(), expect, 1e-15);
}

TEST(Theta, JacobiDerivativeIdentity) {
  for (cplx tau : {cplx(0, 1), cplx(0.2, 0.7), cplx(0, 3)}) {
    const ModularTau t(tau);
    const cplx prod = kPi * theta0(0.0, t) * theta2(0.0, t) * theta3(0.0, t);
    EXPECT_LT(rel(theta1_prime_zero(t), prod), 1e-13);
    EXPECT_LT(rel(theta1_prime_zero(t), 2.0 * kPi * std::pow(dedekind_eta(t), 3)), 1e-13);
  }
}

TEST(Theta, JacobiQuarticIdentity) {
  const ModularTau t(0.1, 0.9);
  const cplx t3 = theta3(0.0, t), t0 = theta0(0.0, t), t2 = theta2(0.0, t);
  EXPECT_LT(std::abs(std::pow(t3, 4) - std::pow(t0, 4) - std::pow(t2, 4)) / std::abs(std::pow(t3, 4)), 1e-14);
}

TEST(Theta, ZerosOfTheta1OnLattice) {
  const ModularTau t(0.0, 1.2);
  for (int m = -2; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      const cplx v = double(m) + double(n) * t.value();
      const Scaled at = theta_scaled(ThetaIndex::one, v, t);
      const Scaled near = theta_scaled(ThetaIndex::one, v + 0.25, t);
      EXPECT_TRUE(at.is_zero() || at.log_abs() - near.log_abs() < -25.0) << v;
    }
  }
}

TEST(Theta, ParityProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int c = 0; c < 200; ++c) {
    const ModularTau t(0.5 * u(rng), 1.0 + 0.8 * u(rng));
    const cplx v(2.0 * u(rng), u(rng));
    for (int mu = 0; mu < 4; ++mu) {
      const cplx a = theta_eval(theta_index(mu), v, t), b = theta_eval(theta_index(mu), -v, t);
      EXPECT_LT(std::abs(b - (mu == 1 ? -a : a)), 1e-12 * std::abs(a));
    }
  }
}

TEST(Theta, FarArgumentsStayFiniteInLogSpace) {
  const ModularTau t(0.0, 1.0);
  const cplx v(0.3, 40.0);  // |theta| ~ e^{pi * 1600}, beyond the double range
  const Scaled s = theta_scaled(ThetaIndex::three, v, t);
  EXPECT_TRUE(std::isfinite(s.log_abs()));
  EXPECT_GT(s.log_abs(), 700.0);
  // rebuilt from the reduced argument: v = v0 + 40 tau
  const cplx v0(0.3, 0.0);
  const Scaled expect = Scaled::from_exp(-kPi * cplx(0, 1) * (80.0 * v0 + 1600.0 * t.value())) *
                        theta_series_scaled(ThetaIndex::three, v0, t);
  EXPECT_LT(relative_difference(s, expect), 1e-11);
}

TEST(Theta, ImaginaryTransformInvolution) {
  for (double im : {0.3, 1.0, 2.7}) {
    const ModularTau t(0.0, im);
    const cplx v(0.17, 0.05);
    for (int mu = 0; mu < 4; ++mu) {
      EXPECT_LT(rel(imaginary_transform(theta_index(mu), v, t), theta_eval(theta_index(mu), v, t)), 1e-12);
    }
  }
}

TEST(Theta, ProductFormMatchesSeries) {
  const ModularTau t(0.25, 0.6);
  for (cplx v : {cplx(0.1, 0.0), cplx(-0.3, 0.2), cplx(0.45, -0.25)}) {
    EXPECT_LT(rel(theta1_product(v, t), theta_oracle(1, v, t.value())), 1e-12);
  }
}

TEST(Theta, InvalidInputsThrow) {
  EXPECT_THROW(ModularTau(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ModularTau(0.0, -1.0), std::invalid_argument);
  EXPECT_THROW(theta_index(4), std::invalid_argument);
}

TEST(Scaled, ArithmeticRoundTrips) {
  const Scaled a = Scaled::from(cplx(3.0, -1.0)), b = Scaled::from_exp(cplx(800.0, 0.4));
  // the mantissa of e^{800} carries about 800 ulp of phase error
  EXPECT_LT(relative_difference((a * b) / b, a), 1e-12);
  EXPECT_NEAR((a + a).value().real(), 6.0, 1e-14);
  EXPECT_TRUE((a - a).is_zero() || std::abs((a - a).value()) < 1e-15);
  EXPECT_NEAR(b.log_abs(), 800.0, 1e-12);
}
