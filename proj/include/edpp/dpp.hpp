#pragma once

#include <span>
#include <vector>

#include "edpp/orthogonality.hpp"

namespace edpp {

struct Configuration {
  std::vector<cplx> points;
  DomainGeometry geom;

  // points are wrapped into the fundamental domain
  Configuration(std::vector<cplx> pts, const DomainGeometry& g);
};

struct ParityConstants {
  int s = 0;        // theta index in the A-family weight
  int s_tilde = 0;  // theta index in the shifted plasma form
  int sgn_l = 1;
  int sgn_iw = 1;
};

ParityConstants parity_constants(const RootSystemSpec& spec);

class KernelContext {
 public:
  KernelContext(const RootSystemSpec& spec, const DomainGeometry& geom);

  const RootSystemSpec& spec() const { return norms_.spec; }
  const DomainGeometry& geom() const { return norms_.geom; }
  const NormTable& norms() const { return norms_; }
  int n() const { return norms_.spec.n(); }

  std::vector<cplx> features(cplx z) const { return feature_vector(norms_, z); }

 private:
  NormTable norms_;
};

// Raw-point versions take unwrapped coordinates so that lattice shifts can be tested.
Scaled weight_c_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);
Scaled q_lower_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);
double log_weight_q(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);
double weight_q(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);

cplx weight_c(const RootSystemSpec& spec, const Configuration& config);
double weight_q(const RootSystemSpec& spec, const Configuration& config);

double quasi_periodicity_residual_q_lower(const RootSystemSpec& spec, const DomainGeometry& geom,
                                          std::span<const cplx> z, int m);

// max relative residual of Q under the 2N elementary lattice shifts
double q_double_periodicity_residual(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);

double log_partition_z(const RootSystemSpec& spec, const DomainGeometry& geom);
double partition_z(const RootSystemSpec& spec, const DomainGeometry& geom);

double density_p(const RootSystemSpec& spec, const Configuration& config);
double log_density_p(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);

cplx kernel_eval(const KernelContext& ctx, cplx z, cplx zp);

double kernel_quasi_periodicity_residual(const KernelContext& ctx, cplx z, cplx zp);

// det[K(z_j, z_k)]; throws if the imaginary residue exceeds 1e-12 relative
double correlation(const KernelContext& ctx, std::span<const cplx> points);

double kernel_trace(const KernelContext& ctx, const QuadratureSpec& q = {});

double reproducing_residual(const KernelContext& ctx, cplx z, cplx zp, const QuadratureSpec& q = {});

// |Q/Z - det K| / max(...); Q/Z integrates to N!
double det_consistency_residual(const KernelContext& ctx, std::span<const cplx> z);

}  // namespace edpp
