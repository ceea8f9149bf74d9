#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edpp/dpp.hpp"

namespace edpp {

enum class LimitClass { A, B, C, D };

std::string limit_class_name(LimitClass c);
LimitClass parse_limit_class(const std::string& name);  // throws std::invalid_argument

// A -> A; B, Bv -> B; C, Cv, BC -> C; D -> D
LimitClass limit_class_of(Family f);

struct StripParams {
  double rho = 1.0;
  double width = 1.0;

  void validate() const;
  double lambda_max() const;  // sqrt(rho) W
};

struct StripQuadrature {
  int nodes = 200;
  double tol = 1e-10;
  int max_doublings = 4;
};

// throws std::runtime_error if the lambda quadrature does not converge
cplx strip_kernel(LimitClass c, const StripParams& p, cplx z, cplx zp, const StripQuadrature& q = {});

// multiplier m with K(z + iW, z') = m K(z, z')
cplx strip_shift_multiplier(LimitClass c, const StripParams& p, cplx z);

double strip_quasi_periodicity_residual(LimitClass c, const StripParams& p, cplx z, cplx zp);

cplx g_strip(LimitClass c, const StripParams& p, cplx z, double lambda);

// integral over lambda in [0, sqrt(rho) W] of g(z) conj(g(z'))
cplx strip_reconstruction(LimitClass c, const StripParams& p, cplx z, cplx zp, const StripQuadrature& q = {});

// Gaussian-windowed strip inner product of g(., lambda) and g(., lambda'), divided by the window mass
cplx smeared_strip_inner_product(LimitClass c, const StripParams& p, double lambda, double lambda_p, double window);

struct TestPair {
  cplx z;
  cplx zp;
};

std::vector<TestPair> seeded_test_pairs(std::uint64_t seed, int count, std::pair<double, double> x_range,
                                        std::pair<double, double> y_range);

enum class ScanScaling {
  fixed_density,  // L = N / (rho W)
  flux_matched,   // L = NN / (2 rho W) for B, C, D classes; same as fixed_density for A
};

double scan_length(const RootSystemSpec& spec, const StripParams& p, ScanScaling s);

struct ScanPoint {
  double parameter = 0.0;  // N or W
  double error = 0.0;
};

// sup over pairs of | |K_N(z,z')| - |K_strip(z,z')| |
std::vector<ScanPoint> finite_to_strip_scan(Family f, std::span<const int> ns, const StripParams& p,
                                            std::span<const TestPair> pairs,
                                            ScanScaling scaling = ScanScaling::fixed_density);

double family_collapse_error(Family f, int n, const StripParams& p, std::span<const TestPair> pairs,
                             ScanScaling scaling = ScanScaling::fixed_density);

// class must be A, C or D
cplx ginibre_kernel(LimitClass c, double rho, cplx z, cplx zp);
double ginibre_density(LimitClass c, double rho, cplx z);  // rho, rho(1 - e^{-4 pi rho |z|^2}), rho(1 + ...)

// B maps to C
LimitClass ginibre_target(LimitClass c);

std::vector<ScanPoint> strip_to_ginibre_scan(LimitClass c, double rho, std::span<const double> widths,
                                             std::span<const TestPair> pairs);

double strip_pair_discrepancy(LimitClass a, LimitClass b, const StripParams& p, std::span<const TestPair> pairs);

enum class IndexSet { n0, even, odd };

// k = 1 only, with (n0, 0), (even, 1), (odd, -1)
double mittag_leffler_density(IndexSet set, int k, double c, cplx z);

// Ginibre C/D densities through the Mittag-Leffler profiles, |w|^2 = 2 pi rho |z|^2
double ginibre_density_via_mittag_leffler(LimitClass c, double rho, cplx z);

// lambda > 0 required for C and D
cplx g_plane(LimitClass c, double rho, cplx z, double lambda);

// lambda integral over [-cut, cut] (A) or (0, cut] (C, D), cut = 6 / sqrt(rho) by default
cplx plane_reconstruction(LimitClass c, double rho, cplx z, cplx zp, double cut = 0.0, int nodes = 400);

// Gaussian window of width X along y, where g is not square-integrable
cplx smeared_plane_inner_product(LimitClass c, double rho, double lambda, double lambda_p, double window);

// non-increasing up to an absolute floor
bool is_monotone_nonincreasing(std::span<const ScanPoint> seq, double floor = 1e-12);

}  // namespace edpp
