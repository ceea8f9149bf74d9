#pragma once

#include <span>
#include <string>
#include <vector>

#include "edpp/theta.hpp"

namespace edpp {

enum class Family { A, B, Bv, C, Cv, BC, D };
enum class Letter { A, B, C, D };

std::string family_name(Family f);
Family parse_family(const std::string& name);  // throws std::invalid_argument
Letter letter_of(Family f);

class RootSystemSpec {
 public:
  RootSystemSpec(Family family, int n_particles);

  Family family() const { return family_; }
  int n() const { return n_; }
  Letter letter() const { return letter_of(family_); }

 private:
  Family family_;
  int n_;
};

class DomainGeometry {
 public:
  DomainGeometry(double length_l, double width_w);

  double length() const { return l_; }
  double width() const { return w_; }
  double area() const { return l_ * w_; }
  ModularTau tau() const { return ModularTau(cplx(0.0, w_ / l_)); }

  // canonical representative in [0,L) x i[0,W)
  cplx wrap(cplx z) const;

 private:
  double l_;
  double w_;
};

int script_n(const RootSystemSpec& spec);
double offset_j(const RootSystemSpec& spec, int j);

Scaled theta_letter_scaled(Letter letter, double sigma, cplx z, const ModularTau& tau);
cplx theta_letter(Letter letter, double sigma, cplx z, const ModularTau& tau);

Scaled m_function_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, int j, cplx z);
cplx m_function(const RootSystemSpec& spec, const DomainGeometry& geom, int j, cplx z);

Scaled macdonald_denominator_scaled(const RootSystemSpec& spec, std::span<const cplx> xi, const ModularTau& tau);
cplx macdonald_denominator(const RootSystemSpec& spec, std::span<const cplx> xi, const ModularTau& tau);

Scaled prefactor_a_scaled(const RootSystemSpec& spec, const ModularTau& tau);
cplx prefactor_a(const RootSystemSpec& spec, const ModularTau& tau);

// det of a square matrix of scaled entries, rows rescaled before LU
Scaled scaled_determinant(const std::vector<std::vector<Scaled>>& rows);

Scaled macdonald_lhs(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);
Scaled macdonald_rhs(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);
double macdonald_identity_residual(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z);

}  // namespace edpp
