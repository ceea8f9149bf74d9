#include <gtest/gtest.h>

#include <random>

#include "edpp/dpp.hpp"
#include "edpp/verify.hpp"

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

TEST(Kernel, DiagonalOfOnePointKernelIsDensity) {
  std::mt19937_64 rng(1);
  for (Family f : kFamilies) {
    if (f == Family::D) continue;
    const DomainGeometry g(1.0, 0.6);
    const RootSystemSpec spec(f, 1);
    const KernelContext ctx(spec, g);
    for (int c = 0; c < 5; ++c) {
      const std::vector<cplx> z = random_points(rng, 1, g);
      EXPECT_NEAR(kernel_eval(ctx, z[0], z[0]).real(), weight_q(spec, g, z) / partition_z(spec, g),
                  1e-10 * kernel_eval(ctx, z[0], z[0]).real());
    }
  }
}

TEST(Kernel, Hermitian) {
  std::mt19937_64 rng(2);
  for (Family f : kFamilies) {
    const DomainGeometry g(1.2, 0.9);
    const KernelContext ctx(RootSystemSpec(f, 3), g);
    const std::vector<cplx> z = random_points(rng, 2, g);
    EXPECT_LT(std::abs(kernel_eval(ctx, z[1], z[0]) - std::conj(kernel_eval(ctx, z[0], z[1]))),
              1e-13 * std::abs(kernel_eval(ctx, z[0], z[1])));
  }
}

TEST(Kernel, DeterminantEqualsQOverZWithoutFactorial) {
  // det K integrates to N!, and so does Q/Z; a literal N! Q/Z would be off by N!
  std::mt19937_64 rng(3);
  for (Family f : kFamilies) {
    const DomainGeometry g(1.0, 0.8);
    const RootSystemSpec spec(f, 3);
    const KernelContext ctx(spec, g);
    const std::vector<cplx> z = random_points(rng, 3, g);
    const double ratio = correlation(ctx, z) / (weight_q(spec, g, z) / partition_z(spec, g));
    EXPECT_NEAR(ratio, 1.0, 1e-9) << family_name(f);
    EXPECT_LT(det_consistency_residual(ctx, z), 1e-9);
  }
}

TEST(Kernel, QOverZIntegratesToFactorial) {
  const DomainGeometry g(1.0, 1.0);
  for (Family f : {Family::A, Family::C, Family::D}) {
    const RootSystemSpec spec(f, 2);
    EXPECT_NEAR(partition_by_quadrature(spec, g, 20) / partition_z(spec, g), 1.0, 1e-3) << family_name(f);
  }
}

TEST(Kernel, LShiftSignForFamilyA) {
  // K(z+L, z') = s K(z, z') with s = -1 for odd script-N + 1, measured directly
  const DomainGeometry g(1.0, 1.0);
  for (int n = 1; n <= 4; ++n) {
    const RootSystemSpec spec(Family::A, n);
    const KernelContext ctx(spec, g);
    const cplx z(0.23, 0.41), zp(0.71, 0.12);
    const cplx ratio = kernel_eval(ctx, z + 1.0, zp) / kernel_eval(ctx, z, zp);
    const double expect = (script_n(spec) + 1) % 2 == 0 ? 1.0 : -1.0;
    EXPECT_NEAR(ratio.real(), expect, 1e-10) << "N=" << n;
    EXPECT_NEAR(ratio.imag(), 0.0, 1e-10);
    EXPECT_EQ(parity_constants(spec).sgn_l, static_cast<int>(expect));
  }
}

TEST(Kernel, QuasiPeriodicityAllFamilies) {
  std::mt19937_64 rng(4);
  for (Family f : kFamilies) {
    for (int n = (f == Family::D ? 2 : 1); n <= 3; ++n) {
      const DomainGeometry g(1.0, 0.7);
      const KernelContext ctx(RootSystemSpec(f, n), g);
      const std::vector<cplx> z = random_points(rng, 2, g);
      EXPECT_LT(kernel_quasi_periodicity_residual(ctx, z[0], z[1]), 1e-10) << family_name(f) << n;
    }
  }
}

TEST(Kernel, DensityIsPeriodicAcrossCellEdges) {
  const DomainGeometry g(1.0, 1.0);
  const KernelContext ctx(RootSystemSpec(Family::A, 5), g);
  for (double t : {0.1, 0.37, 0.8}) {
    EXPECT_NEAR(kernel_eval(ctx, cplx(0.0, t), cplx(0.0, t)).real(), kernel_eval(ctx, cplx(1.0, t), cplx(1.0, t)).real(),
                1e-11);
    EXPECT_NEAR(kernel_eval(ctx, cplx(t, 0.0), cplx(t, 0.0)).real(), kernel_eval(ctx, cplx(t, 1.0), cplx(t, 1.0)).real(),
                1e-11);
  }
}

TEST(Kernel, TraceAndReproducing) {
  QuadratureSpec q;
  q.nx = 48;
  q.ny = 48;
  q.rule_y = Rule::periodic_trapezoid;
  const KernelContext ctx(RootSystemSpec(Family::Cv, 3), DomainGeometry(1.0, 1.5));
  EXPECT_NEAR(kernel_trace(ctx, q), 3.0, 1e-8);
  EXPECT_LT(reproducing_residual(ctx, cplx(0.2, 0.3), cplx(0.6, 1.1), q), 1e-6);
}

TEST(Kernel, CorrelationVanishesForCoincidentPoints) {
  const KernelContext ctx(RootSystemSpec(Family::BC, 3), DomainGeometry(1.0, 1.0));
  const std::vector<cplx> z = {cplx(0.3, 0.4), cplx(0.3, 0.4)};
  EXPECT_LT(std::abs(correlation(ctx, z)), 1e-12);
  const std::vector<cplx> four(4, cplx(0.1, 0.1));
  EXPECT_THROW(correlation(ctx, four), std::out_of_range);
}

TEST(Weight, DoublePeriodicityOfQ) {
  std::mt19937_64 rng(5);
  for (Family f : kFamilies) {
    const DomainGeometry g(1.3, 0.7);
    const RootSystemSpec spec(f, 3);
    EXPECT_LT(q_double_periodicity_residual(spec, g, random_points(rng, 3, g)), 1e-10) << family_name(f);
  }
}

TEST(Weight, ConfigurationWrapsPoints) {
  const DomainGeometry g(1.0, 1.0);
  const Configuration c({cplx(1.25, -0.5)}, g);
  EXPECT_NEAR(c.points[0].real(), 0.25, 1e-15);
  EXPECT_NEAR(c.points[0].imag(), 0.5, 1e-15);
}
