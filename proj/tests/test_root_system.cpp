#include <gtest/gtest.h>

#include <random>

#include "edpp/orthogonality.hpp"

using namespace edpp;

namespace {

const Family kFamilies[] = {Family::A, Family::B, Family::Bv, Family::C, Family::Cv, Family::BC, Family::D};

std::vector<cplx> random_points(std::mt19937_64& rng, int n, const DomainGeometry& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> z;
  for (int k = 0; k < n; ++k) z.emplace_back(g.length() * u(rng), g.width() * u(rng));
  return z;
}

}  // namespace

TEST(RootSystem, FamilyNamesRoundTrip) {
  for (Family f : kFamilies) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_THROW(parse_family("E8"), std::invalid_argument);
}

TEST(RootSystem, ConstructorRules) {
  EXPECT_THROW(RootSystemSpec(Family::D, 1), std::invalid_argument);
  EXPECT_THROW(RootSystemSpec(Family::A, 0), std::invalid_argument);
  EXPECT_NO_THROW(RootSystemSpec(Family::D, 2));
  EXPECT_THROW(DomainGeometry(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(DomainGeometry(1.0, -1.0), std::invalid_argument);
}

TEST(RootSystem, WrapIntoFundamentalDomain) {
  const DomainGeometry g(2.0, 0.5);
  const cplx w = g.wrap(cplx(-0.5, 1.3));
  EXPECT_NEAR(w.real(), 1.5, 1e-15);
  EXPECT_NEAR(w.imag(), 0.3, 1e-15);
}

TEST(Macdonald, IdentityHoldsForEveryFamily) {
  std::mt19937_64 rng(5);
  for (Family f : kFamilies) {
    for (int n = (f == Family::D ? 2 : 1); n <= 4; ++n) {
      const DomainGeometry g(1.0, 0.7);
      for (int c = 0; c < 5; ++c) {
        EXPECT_LT(macdonald_identity_residual(RootSystemSpec(f, n), g, random_points(rng, n, g)), 1e-9)
            << family_name(f) << " N=" << n;
      }
    }
  }
}

TEST(Macdonald, DeterminantAntisymmetricUnderSwap) {
  std::mt19937_64 rng(6);
  const DomainGeometry g(1.3, 0.8);
  for (Family f : kFamilies) {
    const RootSystemSpec spec(f, 3);
    std::vector<cplx> z = random_points(rng, 3, g);
    const Scaled a = macdonald_lhs(spec, g, z);
    std::swap(z[0], z[2]);
    const Scaled b = macdonald_lhs(spec, g, z);
    EXPECT_LT(relative_difference(b, a * cplx(-1.0, 0.0)), 1e-12) << family_name(f);
  }
}

TEST(Macdonald, VanishesOnCoincidentPoints) {
  const DomainGeometry g(1.0, 1.0);
  for (Family f : kFamilies) {
    const RootSystemSpec spec(f, 2);
    const std::vector<cplx> apart = {cplx(0.31, 0.42), cplx(0.67, 0.21)};
    const std::vector<cplx> same = {cplx(0.31, 0.42), cplx(0.31, 0.42)};
    EXPECT_LT(macdonald_rhs(spec, g, same).log_abs() - macdonald_rhs(spec, g, apart).log_abs(), -25.0)
        << family_name(f);
  }
}

TEST(Macdonald, ScaledDeterminantAgreesWithDirectOnSmallMatrix) {
  const std::vector<std::vector<Scaled>> rows = {{Scaled::from(2.0), Scaled::from(1.0)},
                                                 {Scaled::from(cplx(0.0, 1.0)), Scaled::from(3.0)}};
  EXPECT_LT(std::abs(scaled_determinant(rows).value() - cplx(6.0, -1.0)), 1e-14);
}

TEST(Norms, HMatchesOneDimensionalIntegral) {
  for (Family f : kFamilies) {
    const int n = (f == Family::D ? 3 : 2);
    const RootSystemSpec spec(f, n);
    for (int j = 1; j <= n; ++j) EXPECT_LT(h_from_m_residual(spec, DomainGeometry(1.0, 0.9), j), 1e-10);
  }
}

TEST(Norms, XOrthogonalityAtFixedHeight) {
  const RootSystemSpec spec(Family::C, 3);
  const DomainGeometry g(1.0, 1.0);
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      if (j != k) EXPECT_LT(verify_x_orthogonality(spec, g, j, k, 0.37), 1e-12);
    }
  }
}

TEST(Norms, GramIsIdentityAfterNormalization) {
  QuadratureSpec q;
  q.nx = 64;
  q.ny = 48;
  for (Family f : {Family::A, Family::BC, Family::D}) {
    const GramReport r = gram_matrix(RootSystemSpec(f, 3), DomainGeometry(1.0, 2.0), q, 1e-12, 3);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.max_residual, 1e-8) << family_name(f);
  }
}

TEST(Norms, FeatureVectorsAreOrthonormal) {
  // independent 2D quadrature of the feature Gram matrix
  const NormTable t = h_norm_table(RootSystemSpec(Family::B, 3), DomainGeometry(1.0, 1.0));
  QuadratureSpec q;
  q.nx = 96;
  q.ny = 96;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const cplx g = integrate_rect(
          [&](double x, double y) {
            const std::vector<cplx> v = feature_vector(t, cplx(x, y));
            return v[j] * std::conj(v[k]);
          },
          {0.0, 1.0}, {0.0, 1.0}, q);
      EXPECT_LT(std::abs(g - cplx(j == k ? 1.0 : 0.0, 0.0)), 1e-9) << j << k;
    }
  }
}
