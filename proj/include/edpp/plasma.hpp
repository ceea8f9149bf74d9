#pragma once

#include <span>
#include <vector>

#include "edpp/dpp.hpp"

namespace edpp {

enum class Potential { minus, pm };

struct PlasmaSpec {
  Potential potential = Potential::minus;
  int n = 1;
  double n_background = 1.0;  // N^-, real in general
  double beta = 2.0;
  DomainGeometry geom{1.0, 1.0};

  void validate() const;
};

// (minus, N, 2) for A; (pm, N+1, 2) for C; (pm, N-1, 2) for D
PlasmaSpec solvable_preset(Family f, int n, const DomainGeometry& geom);

// +infinity at the logarithmic singularities
double phi_bare(Potential p, const DomainGeometry& geom, cplx z, cplx zp);
double phi_regularized(Potential p, const DomainGeometry& geom, cplx z, cplx zp);

struct BackgroundIntegrals {
  cplx i_minus;
  cplx i_plus;
  cplx i_zero;
};

// Re I0 = LW log eta + 4 pi W^2 / 3; the imaginary parts are branch-dependent
BackgroundIntegrals background_integrals(const DomainGeometry& geom, cplx z);

// two alternative constants for Re I0 - LW log eta; both disagree with quadrature and are kept for reporting
double i_zero_constant_13_12(const DomainGeometry& geom);  // 13 pi W^2 / 12
double i_zero_constant_pi_squared(const DomainGeometry& geom);   // 5 pi W^2 / 6 + pi^2 W^2 / 2

struct BackgroundQuadrature {
  double re_i_minus = 0.0;
  double re_i_plus = 0.0;
  double re_i_zero = 0.0;
};

// Midpoint rule on n x n and n/2 x n/2 grids, Richardson-combined, after subtracting the nearby log
// singularities, which are integrated exactly. n must be a multiple of 4 so no node sits on a theta1 zero.
BackgroundQuadrature background_integrals_quadrature(const DomainGeometry& geom, cplx z, int n = 200);

double background_potential_v(const PlasmaSpec& spec, cplx z);
double background_potential_v_quadrature(const PlasmaSpec& spec, cplx z, int n = 400);
double background_energy_bb(const PlasmaSpec& spec);

struct EnergyTerms {
  double pp = 0.0;
  double pb = 0.0;
  double bb = 0.0;
  double total() const { return pp + pb + bb; }
};

// pair sum of phi_regularized over j<k, V summed over particles, bb closed form
EnergyTerms energy_terms(const PlasmaSpec& spec, std::span<const cplx> z);

// closed form of E_pp + E_pb + E_bb; +infinity for singular configurations
double total_energy(const PlasmaSpec& spec, std::span<const cplx> z);

// theta_{s~(N)}(sum(z_k/L - (L+iW)/(2L)))
Scaled hat_factor(const DomainGeometry& geom, std::span<const cplx> z);

double log_boltzmann_weight(const PlasmaSpec& spec, std::span<const cplx> z, bool hat_transform);
double boltzmann_weight(const PlasmaSpec& spec, std::span<const cplx> z, bool hat_transform);

double theta_product_identity_residual(const DomainGeometry& geom, std::span<const cplx> z);

enum class ConstantReading {
  corrected,           // no exponential factor
  exponential_over_l,  // e^{-+(N+-1) tau pi i / L}
  exponential_over_4,  // e^{-+(N+-1) tau pi i / 4}
};

// log c^{R_N}(L, tau), family A, C or D
double log_proportionality_constant(Family f, const DomainGeometry& geom, int n,
                                    ConstantReading reading = ConstantReading::corrected);

// log(Q~_plasma / Q^{R_N}) at one configuration
double log_proportionality_ratio(Family f, const DomainGeometry& geom, std::span<const cplx> z);

struct ConstancyReport {
  double mean = 0.0;
  double std_over_mean = 0.0;
  double median_log = 0.0;
};

ConstancyReport proportionality_constancy(Family f, const DomainGeometry& geom,
                                          const std::vector<std::vector<cplx>>& configs);

double log_plasma_partition(Family f, const DomainGeometry& geom, int n);
double log_plasma_partition_with_exponential(Family f, const DomainGeometry& geom, int n);

struct FreeEnergy {
  double exact = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  double log_term = 0.0;  // -log N / (2N) for C and D, 0 for A
  double residual = 0.0;  // exact - (f0 + log_term + f1 / N)
};

FreeEnergy free_energy_expansion(Family f, const DomainGeometry& geom, int n);

// sqrt(Im tau)|eta(tau)|^2 against the same at -1/tau, relative
double gff_modular_residual(const ModularTau& tau);

struct GffReport {
  double f_gff_nonzero = 0.0;  // log eta^2
  double f_gff = 0.0;          // log(2 sqrt(pi Im tau) eta^2)
  double f1_a = 0.0;
  double f1_c_minus_gff = 0.0;
  double f1_d_minus_gff = 0.0;
  double modular_residual = 0.0;
};

GffReport gff_comparison(const DomainGeometry& geom, double rho);

}  // namespace edpp
