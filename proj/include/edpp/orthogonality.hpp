#pragma once

#include <vector>

#include "edpp/quadrature.hpp"
#include "edpp/root_system.hpp"

namespace edpp {

struct NormTable {
  RootSystemSpec spec;
  DomainGeometry geom;
  std::vector<double> log_h;  // h_j may exceed the double range for large N

  double h(int j) const;  // 1-based
};

Scaled m_weight_y_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, int j, double y);
cplx m_weight_y(const RootSystemSpec& spec, const DomainGeometry& geom, int j, double y);

NormTable h_norm_table(const RootSystemSpec& spec, const DomainGeometry& geom);

// e^{-pi NN y^2/(LW)} M_j(z) / sqrt(h_j); orthonormal over the fundamental domain
std::vector<cplx> feature_vector(const NormTable& norms, cplx z);

double verify_x_orthogonality(const RootSystemSpec& spec, const DomainGeometry& geom, int j, int k, double y,
                              int nx = 256);

struct GramReport {
  std::vector<std::vector<cplx>> normalized;  // G_jk / sqrt(h_j h_k)
  double max_residual = 0.0;                  // max |normalized - identity|
  bool converged = true;
};

GramReport gram_matrix(const RootSystemSpec& spec, const DomainGeometry& geom, const QuadratureSpec& q = {},
                       double tol = 1e-10, int max_doublings = 4);

double verify_z_orthogonality(const RootSystemSpec& spec, const DomainGeometry& geom, int j, int k,
                              const QuadratureSpec& q = {});

// |int_0^W e^{-2 pi NN y^2/(LW)} m_j(y) dy - h_j| / h_j
double h_from_m_residual(const RootSystemSpec& spec, const DomainGeometry& geom, int j, int ny = 128);

}  // namespace edpp
