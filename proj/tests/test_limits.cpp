#include <gtest/gtest.h>

#include <cmath>

#include "edpp/limits.hpp"

using namespace edpp;

namespace {

const LimitClass kClasses[] = {LimitClass::A, LimitClass::B, LimitClass::C, LimitClass::D};

// direct Gaussian-kernel forms, written out independently of the library
cplx ginibre_oracle(LimitClass c, double rho, cplx z, cplx zp) {
  const double gauss = std::exp(-kPi * rho * (std::norm(z) + std::norm(zp)));
  const cplx a = 2.0 * kPi * rho * z * std::conj(zp);
  if (c == LimitClass::A) {
    return rho * std::exp(-0.5 * kPi * rho * (std::norm(z) + std::norm(zp)) + kPi * rho * z * std::conj(zp));
  }
  return 2.0 * rho * gauss * (c == LimitClass::C ? std::sinh(a) : std::cosh(a));
}

}  // namespace

TEST(Strip, VanishesAtOriginForBAndC) {
  const StripParams p{1.0, 1.0};
  EXPECT_LT(std::abs(strip_kernel(LimitClass::B, p, 0.0, 0.0)), 1e-10);
  EXPECT_LT(std::abs(strip_kernel(LimitClass::C, p, 0.0, 0.0)), 1e-10);
  EXPECT_GT(strip_kernel(LimitClass::D, p, 0.0, 0.0).real(), 0.1);
  EXPECT_GT(strip_kernel(LimitClass::A, p, 0.0, 0.0).real(), 0.1);
}

TEST(Strip, DiagonalIsRealAndPositive) {
  const StripParams p{1.3, 0.8};
  for (LimitClass c : kClasses) {
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.7, -0.3)}) {
      const cplx k = strip_kernel(c, p, z, z);
      EXPECT_GT(k.real(), 0.0);
      EXPECT_LT(std::abs(k.imag()), 1e-12 * k.real());
    }
  }
}

TEST(Strip, ShiftMultiplierUsesDoubledFluxOutsideA) {
  const StripParams p{1.0, 1.5};
  const cplx z(0.3, 0.2);
  EXPECT_LT(std::abs(strip_shift_multiplier(LimitClass::A, p, z) - std::exp(cplx(0, -2.0 * kPi * 1.5 * 0.3))), 1e-14);
  EXPECT_LT(std::abs(strip_shift_multiplier(LimitClass::C, p, z) - std::exp(cplx(0, -4.0 * kPi * 1.5 * 0.3))), 1e-14);
  EXPECT_LT(std::abs(strip_shift_multiplier(LimitClass::B, p, z) + std::exp(cplx(0, -4.0 * kPi * 1.5 * 0.3))), 1e-14);
  for (LimitClass c : kClasses) {
    EXPECT_LT(strip_quasi_periodicity_residual(c, p, z, cplx(-0.4, 0.5)), 1e-8) << limit_class_name(c);
  }
}

TEST(Strip, ReconstructionFromFeatureFunctions) {
  const StripParams p{1.0, 1.0};
  for (LimitClass c : kClasses) {
    const cplx z(0.1, 0.2), zp(-0.3, 0.35);
    const cplx k = strip_kernel(c, p, z, zp);
    EXPECT_LT(std::abs(strip_reconstruction(c, p, z, zp) - k), 1e-8 * std::abs(k)) << limit_class_name(c);
  }
}

TEST(Strip, SmearedInnerProductsApproachDelta) {
  const StripParams p{2.0, 1.0};
  const cplx off = smeared_strip_inner_product(LimitClass::A, p, 0.4, 0.9, 8.0);
  const cplx diag = smeared_strip_inner_product(LimitClass::A, p, 0.4, 0.4, 8.0);
  EXPECT_LT(std::abs(off), 1e-10);
  EXPECT_NEAR(diag.real(), std::sqrt(2.0), 1e-3);
}

TEST(Strip, FiniteKernelConvergesForA) {
  const StripParams p{1.0, 1.0};
  const std::vector<TestPair> pairs = seeded_test_pairs(1, 8, {-0.5, 0.5}, {-0.5, 0.5});
  const int ns[] = {8, 16, 32};
  const std::vector<ScanPoint> s = finite_to_strip_scan(Family::A, ns, p, pairs);
  EXPECT_TRUE(is_monotone_nonincreasing(s));
  EXPECT_LT(s.back().error, 1e-3);
}

TEST(Strip, FluxMatchedCollapseIsExact) {
  const StripParams p{1.0, 1.0};
  const std::vector<TestPair> pairs = seeded_test_pairs(2, 6, {-0.5, 0.5}, {-0.5, 0.5});
  for (Family f : {Family::B, Family::Bv, Family::C, Family::Cv, Family::BC, Family::D}) {
    EXPECT_LT(family_collapse_error(f, 16, p, pairs, ScanScaling::flux_matched), 1e-10) << family_name(f);
  }
}

TEST(Strip, ScanLengths) {
  const StripParams p{2.0, 0.5};
  EXPECT_DOUBLE_EQ(scan_length(RootSystemSpec(Family::A, 8), p, ScanScaling::fixed_density), 8.0);
  EXPECT_DOUBLE_EQ(scan_length(RootSystemSpec(Family::A, 8), p, ScanScaling::flux_matched), 8.0);
}

TEST(Strip, SeededPairsAreDeterministicAndInRange) {
  const std::vector<TestPair> a = seeded_test_pairs(9, 10, {-0.5, 0.5}, {0.0, 2.0});
  const std::vector<TestPair> b = seeded_test_pairs(9, 10, {-0.5, 0.5}, {0.0, 2.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].z, b[i].z);
    EXPECT_GE(a[i].zp.imag(), 0.0);
    EXPECT_LE(a[i].zp.imag(), 2.0);
  }
}

TEST(Ginibre, KernelsMatchDirectForms) {
  for (LimitClass c : {LimitClass::A, LimitClass::C, LimitClass::D}) {
    for (double rho : {0.5, 1.0, 3.0}) {
      const cplx z(0.3, -0.2), zp(-0.1, 0.4);
      EXPECT_LT(std::abs(ginibre_kernel(c, rho, z, zp) - ginibre_oracle(c, rho, z, zp)), 1e-14 * rho);
      EXPECT_NEAR(ginibre_density(c, rho, z), ginibre_oracle(c, rho, z, z).real(), 1e-14 * rho);
    }
  }
  EXPECT_EQ(ginibre_density(LimitClass::C, 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(ginibre_density(LimitClass::D, 1.7, 0.0), 3.4);
  EXPECT_THROW(ginibre_kernel(LimitClass::B, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Ginibre, StripKernelsApproachGinibre) {
  const std::vector<TestPair> pairs = seeded_test_pairs(1, 8, {-0.5, 0.5}, {-0.5, 0.5});
  const double ws[] = {1.0, 2.0, 3.0};
  for (LimitClass c : kClasses) {
    const std::vector<ScanPoint> s = strip_to_ginibre_scan(c, 1.0, ws, pairs);
    EXPECT_TRUE(is_monotone_nonincreasing(s)) << limit_class_name(c);
  }
}

TEST(MittagLeffler, MatchesDirectSeries) {
  for (double s : {0.0, 0.3, 2.0, 11.0}) {
    const cplx w(std::sqrt(s), 0.0);
    double n0 = 0.0, even = 0.0, odd = 0.0;
    for (int j = 0; j < 200; ++j) {
      const double t = std::exp(j * std::log(std::max(s, 1e-300)) - std::lgamma(j + 1.0) - s);
      const double term = (s == 0.0) ? (j == 0 ? 1.0 : 0.0) : t;
      n0 += term;
      if (j % 2 == 1) even += term;      // s^{j+1}/(j+1)! over even j
      if (j % 2 == 0 && j > 0) odd += term;  // s^{j-1}/(j-1)! over odd j
    }
    if (s == 0.0) odd = 1.0;
    EXPECT_NEAR(mittag_leffler_density(IndexSet::n0, 1, 0.0, w), n0, 1e-14);
    EXPECT_NEAR(mittag_leffler_density(IndexSet::even, 1, 1.0, w), even, 1e-14);
    EXPECT_NEAR(mittag_leffler_density(IndexSet::odd, 1, -1.0, w), odd + (s == 0.0 ? 0.0 : std::exp(-s)), 1e-14);
  }
  EXPECT_THROW(mittag_leffler_density(IndexSet::even, 2, 1.0, 0.0), std::invalid_argument);
}

TEST(MittagLeffler, LargeArgumentStable) {
  const cplx w(30.0, 0.0);  // s = 900, e^{-s} underflows alone
  EXPECT_NEAR(mittag_leffler_density(IndexSet::n0, 1, 0.0, w), 1.0, 1e-12);
  EXPECT_NEAR(mittag_leffler_density(IndexSet::even, 1, 1.0, w), 0.5, 1e-12);
}

TEST(Plane, ReconstructionAndSmearing) {
  for (LimitClass c : {LimitClass::A, LimitClass::C, LimitClass::D}) {
    const cplx z(0.2, 0.1), zp(-0.15, 0.3);
    // equal up to a gauge factor, so compare moduli and a 2x2 correlation determinant
    auto rec = [&](cplx a, cplx b) { return plane_reconstruction(c, 1.0, a, b); };
    auto gin = [&](cplx a, cplx b) { return ginibre_kernel(c, 1.0, a, b); };
    EXPECT_NEAR(std::abs(rec(z, zp)), std::abs(gin(z, zp)), 1e-10) << limit_class_name(c);
    const cplx d_rec = rec(z, z) * rec(zp, zp) - rec(z, zp) * rec(zp, z);
    const cplx d_gin = gin(z, z) * gin(zp, zp) - gin(z, zp) * gin(zp, z);
    EXPECT_LT(std::abs(d_rec - d_gin), 1e-10) << limit_class_name(c);
  }
  EXPECT_LT(std::abs(smeared_plane_inner_product(LimitClass::A, 1.0, 0.3, 0.8, 8.0)), 1e-10);
  EXPECT_NEAR(smeared_plane_inner_product(LimitClass::C, 1.0, 0.5, 0.5, 8.0).real(), 2.0, 1e-2);
}

TEST(Monotone, FloorIgnoresRoundoffWiggle) {
  const std::vector<ScanPoint> s = {{1, 1e-2}, {2, 1e-15}, {3, 3e-15}};
  EXPECT_TRUE(is_monotone_nonincreasing(s));
  const std::vector<ScanPoint> bad = {{1, 1e-3}, {2, 2e-3}};
  EXPECT_FALSE(is_monotone_nonincreasing(bad));
}
