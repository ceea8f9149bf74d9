#include "edpp/plasma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace edpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_eta(const DomainGeometry& g) { return log_dedekind_eta(g.tau()).real(); }

double log_abs_theta1(cplx v, const DomainGeometry& g) { return log_abs_theta(ThetaIndex::one, v, g.tau()); }

void require_solvable_family(Family f, int n, const char* what) {
  if (f != Family::A && f != Family::C && f != Family::D) {
    throw std::invalid_argument(std::string(what) + ": family must be A, C or D");
  }
  RootSystemSpec(f, n);
}

}  // namespace

void PlasmaSpec::validate() const {
  if (n < 1) throw std::invalid_argument("PlasmaSpec: n must be at least 1");
  if (!(beta > 0.0)) throw std::invalid_argument("PlasmaSpec: beta must be positive");
  if (!(n_background >= 0.0) || !std::isfinite(n_background)) {
    throw std::invalid_argument("PlasmaSpec: n_background must be finite and nonnegative");
  }
}

PlasmaSpec solvable_preset(Family f, int n, const DomainGeometry& geom) {
  require_solvable_family(f, n, "solvable_preset");
  switch (f) {
    case Family::A: return {Potential::minus, n, static_cast<double>(n), 2.0, geom};
    case Family::C: return {Potential::pm, n, static_cast<double>(n + 1), 2.0, geom};
    default: return {Potential::pm, n, static_cast<double>(n - 1), 2.0, geom};
  }
}

double phi_bare(Potential p, const DomainGeometry& geom, cplx z, cplx zp) {
  const double l = geom.length();
  double s = log_abs_theta1((z - zp) / l, geom);
  if (p == Potential::pm) s += log_abs_theta1((z + zp) / l, geom);
  return std::isfinite(s) ? -s : kInf;
}

double phi_regularized(Potential p, const DomainGeometry& geom, cplx z, cplx zp) {
  const double l = geom.length();
  double v = phi_bare(p, geom, z, zp);
  if (std::isinf(v)) return kInf;
  v += 3.0 * log_eta(geom) + std::log(2.0 * kPi / l);
  if (p == Potential::pm) {
    const double self = log_abs_theta1(2.0 * z / l, geom) + log_abs_theta1(2.0 * zp / l, geom);
    if (!std::isfinite(self)) return kInf;
    v += 0.5 * self;
  }
  return v;
}

BackgroundIntegrals background_integrals(const DomainGeometry& geom, cplx z) {
  const double l = geom.length(), w = geom.width();
  const double x = z.real(), y = z.imag();
  const double base = l * w * log_eta(geom);
  BackgroundIntegrals b;
  b.i_minus = cplx(base + kPi * (y - w / 2) * (y - w / 2) + kPi * w * w / 12.0,
                   -kPi * (2 * x * y - w * x - 2 * l * y + l * w));
  b.i_plus = cplx(base + kPi * y * y + kPi * w * y + kPi * w * w / 3.0, -kPi * (2 * x * y + w * x));
  b.i_zero = cplx(base + 4.0 * kPi * w * w / 3.0, -kPi * l * w);
  return b;
}

double i_zero_constant_13_12(const DomainGeometry& geom) {
  return 13.0 * kPi * geom.width() * geom.width() / 12.0;
}

double i_zero_constant_pi_squared(const DomainGeometry& geom) {
  const double w2 = geom.width() * geom.width();
  return kPi * w2 - kPi * w2 / 4.0 + kPi * kPi * w2 / 2.0 + kPi * w2 / 12.0;
}

namespace {

// antiderivative of log|(x,y)| in both variables
double log_radius_primitive(double x, double y) {
  const double r2 = x * x + y * y;
  if (r2 == 0.0) return 0.0;
  double g = x * y * (std::log(r2) - 3.0);
  if (x != 0.0) g += x * x * std::atan(y / x);
  if (y != 0.0) g += y * y * std::atan(x / y);
  return 0.5 * g;
}

// integral of log|z' - s| over [0,L] x [0,W]
double rectangle_log_integral(cplx s, double l, double w) {
  const double a1 = -s.real(), a2 = l - s.real(), b1 = -s.imag(), b2 = w - s.imag();
  return log_radius_primitive(a2, b2) - log_radius_primitive(a1, b2) - log_radius_primitive(a2, b1) +
         log_radius_primitive(a1, b1);
}

// Midpoint rule for f after subtracting log|z' - s| at every singular point s near the cell; the
// subtracted terms are integrated exactly.
template <class F>
double subtracted_midpoint_sum(F&& f, const std::vector<cplx>& singular, double l, double w, int n) {
  const double hx = l / n, hy = w / n;
  CompensatedSum sum;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const cplx zp((i + 0.5) * hx, (j + 0.5) * hy);
      double v = f(zp);
      for (cplx s : singular) v -= std::log(std::abs(zp - s));
      sum.add(v);
    }
  }
  double exact = 0.0;
  for (cplx s : singular) exact += rectangle_log_integral(s, l, w);
  return hx * hy * sum.value().real() + exact;
}

// Richardson step on grids n and n/2 cancels the h^2 term of the smooth remainder
template <class F>
double singularity_subtracted_midpoint(F&& f, const std::vector<cplx>& singular, double l, double w, int n) {
  return (4.0 * subtracted_midpoint_sum(f, singular, l, w, n) - subtracted_midpoint_sum(f, singular, l, w, n / 2)) / 3.0;
}

std::vector<cplx> lattice_images(cplx base, double l, double w, int lo, int hi) {
  std::vector<cplx> out;
  for (int m = lo; m <= hi; ++m) {
    for (int k = lo; k <= hi; ++k) out.push_back(base + cplx(m * l, k * w));
  }
  return out;
}

}  // namespace

BackgroundQuadrature background_integrals_quadrature(const DomainGeometry& geom, cplx z, int n) {
  if (n < 4 || n % 4 != 0) {
    throw std::invalid_argument("background_integrals_quadrature: n must be a positive multiple of 4");
  }
  const double l = geom.length(), w = geom.width();
  BackgroundQuadrature q;
  q.re_i_minus = singularity_subtracted_midpoint([&](cplx zp) { return log_abs_theta1((z - zp) / l, geom); },
                                                 lattice_images(z, l, w, -1, 1), l, w, n);
  q.re_i_plus = singularity_subtracted_midpoint([&](cplx zp) { return log_abs_theta1((z + zp) / l, geom); },
                                                lattice_images(-z, l, w, 0, 2), l, w, n);
  q.re_i_zero = singularity_subtracted_midpoint([&](cplx zp) { return log_abs_theta1(2.0 * zp / l, geom); },
                                                lattice_images(0.0, l / 2, w / 2, -1, 3), l, w, n);
  return q;
}

double background_potential_v(const PlasmaSpec& spec, cplx z) {
  spec.validate();
  const DomainGeometry& g = spec.geom;
  const double nb = spec.n_background;
  const BackgroundIntegrals b = background_integrals(g, z);
  const double consts = -3.0 * nb * log_eta(g) - nb * std::log(2.0 * kPi / g.length());
  if (spec.potential == Potential::minus) return nb / g.area() * b.i_minus.real() + consts;
  const double self = log_abs_theta1(2.0 * z / g.length(), g);
  if (!std::isfinite(self)) return kInf;
  return nb / g.area() * (b.i_plus.real() + b.i_minus.real() - 0.5 * b.i_zero.real()) + consts - 0.5 * nb * self;
}

double background_potential_v_quadrature(const PlasmaSpec& spec, cplx z, int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("background_potential_v_quadrature: n must be even");
  const DomainGeometry& g = spec.geom;
  const double hx = g.length() / n, hy = g.width() / n;
  CompensatedSum s;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      s.add(phi_regularized(spec.potential, g, z, cplx((i + 0.5) * hx, (j + 0.5) * hy)));
    }
  }
  return -spec.n_background / g.area() * hx * hy * s.value().real();
}

double background_energy_bb(const PlasmaSpec& spec) {
  spec.validate();
  const DomainGeometry& g = spec.geom;
  const double nb = spec.n_background;
  const double e = nb * nb * log_eta(g) + 0.5 * nb * nb * std::log(2.0 * kPi / g.length());
  if (spec.potential == Potential::minus) return e - kPi * nb * nb * g.width() / (12.0 * g.length());
  return e;
}

EnergyTerms energy_terms(const PlasmaSpec& spec, std::span<const cplx> z) {
  spec.validate();
  if (static_cast<int>(z.size()) != spec.n) throw std::invalid_argument("energy_terms: configuration size");
  EnergyTerms t;
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) t.pp += phi_regularized(spec.potential, spec.geom, z[k], z[j]);
    t.pb += background_potential_v(spec, z[k]);
  }
  t.bb = background_energy_bb(spec);
  return t;
}

double total_energy(const PlasmaSpec& spec, std::span<const cplx> z) {
  spec.validate();
  if (static_cast<int>(z.size()) != spec.n) throw std::invalid_argument("total_energy: configuration size");
  const DomainGeometry& g = spec.geom;
  const double l = g.length(), w = g.width();
  const double n = spec.n, nb = spec.n_background;
  const double le = log_eta(g), l2 = std::log(2.0 * kPi / l);
  double pairs = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      pairs += log_abs_theta1((z[k] - z[j]) / l, g);
      if (spec.potential == Potential::pm) pairs += log_abs_theta1((z[k] + z[j]) / l, g);
    }
  }
  if (!std::isfinite(pairs)) return kInf;
  const double logs = 0.5 * (n * (n - 1) - 2 * n * nb + nb * nb) * l2;
  if (spec.potential == Potential::minus) {
    double gauss = 0.0;
    for (cplx p : z) gauss += (p.imag() - w / 2) * (p.imag() - w / 2);
    return -pairs + kPi * nb / (l * w) * gauss + 0.5 * (3 * n * (n - 1) - 4 * n * nb + 2 * nb * nb) * le + logs +
           nb * (n - nb) * kPi * w / (12.0 * l);
  }
  double self = 0.0, gauss = 0.0;
  for (cplx p : z) {
    self += log_abs_theta1(2.0 * p / l, g);
    gauss += p.imag() * p.imag();
  }
  const double cs = 0.5 * ((n - 1) - nb);
  // a zero coefficient must not multiply a singular self-term
  const double self_term = (cs == 0.0) ? 0.0 : cs * self;
  if (!std::isfinite(self_term)) return kInf;
  return -pairs + self_term + 2.0 * kPi * nb / (l * w) * gauss +
         0.5 * (3 * n * (n - 1) - 3 * n * nb + 2 * nb * nb) * le + logs;
}

Scaled hat_factor(const DomainGeometry& geom, std::span<const cplx> z) {
  const double l = geom.length();
  const int st = (z.size() % 2 == 0) ? 0 : 1;
  cplx s(0.0, 0.0);
  for (cplx p : z) s += p / l - cplx(l, geom.width()) / (2.0 * l);
  return theta_scaled(theta_index(st), s, geom.tau());
}

double log_boltzmann_weight(const PlasmaSpec& spec, std::span<const cplx> z, bool hat_transform) {
  const double e = total_energy(spec, z);
  if (std::isinf(e)) return -kInf;
  double lw = -spec.beta * e;
  if (hat_transform) lw += 2.0 * hat_factor(spec.geom, z).log_abs();
  return lw;
}

double boltzmann_weight(const PlasmaSpec& spec, std::span<const cplx> z, bool hat_transform) {
  return std::exp(log_boltzmann_weight(spec, z, hat_transform));
}

double theta_product_identity_residual(const DomainGeometry& geom, std::span<const cplx> z) {
  const double n = static_cast<double>(z.size());
  const double l = geom.length(), w = geom.width();
  const int s = (z.size() % 2 == 0) ? 0 : 3;
  double shifted = 0.0, plain = 0.0;
  cplx sum(0.0, 0.0);
  for (cplx p : z) {
    shifted += (p.imag() - w / 2) * (p.imag() - w / 2);
    plain += p.imag() * p.imag();
    sum += p / l;
  }
  const Scaled h = hat_factor(geom, z);
  const Scaled t = theta_scaled(theta_index(s), sum, geom.tau());
  const Scaled lhs = Scaled::from_exp(-2.0 * kPi * n / (l * w) * shifted) * (h * h.conj());
  const Scaled rhs = Scaled::from_exp(-2.0 * kPi * n / (l * w) * plain) * (t * t.conj());
  return relative_difference(lhs, rhs);
}

double log_proportionality_constant(Family f, const DomainGeometry& geom, int n, ConstantReading reading) {
  require_solvable_family(f, n, "log_proportionality_constant");
  const double le = log_eta(geom), l2 = std::log(2.0 * kPi / geom.length());
  const double nn = n;
  // tau pi i = -pi W / L for the rectangular domain
  const double tpi = -kPi * geom.width() / geom.length();
  switch (f) {
    case Family::A: return nn * l2 - nn * (nn - 3) * le;
    case Family::C: {
      const double base = (nn - 1) * l2 - 2.0 * (nn * nn - nn + 1) * le;
      if (reading == ConstantReading::exponential_over_l) return base - (nn + 1) * tpi / geom.length();
      if (reading == ConstantReading::exponential_over_4) return base - (nn + 1) * tpi / 4.0;
      return base;
    }
    default: {
      const double base = (nn - 1) * l2 - 2.0 * (nn - 1) * (nn - 1) * le;
      if (reading == ConstantReading::exponential_over_l) return base + (nn - 1) * tpi / geom.length();
      if (reading == ConstantReading::exponential_over_4) return base + (nn - 1) * tpi / 4.0;
      return base;
    }
  }
}

double log_proportionality_ratio(Family f, const DomainGeometry& geom, std::span<const cplx> z) {
  const int n = static_cast<int>(z.size());
  const PlasmaSpec spec = solvable_preset(f, n, geom);
  const double lp = log_boltzmann_weight(spec, z, f == Family::A);
  return lp - log_weight_q(RootSystemSpec(f, n), geom, z);
}

ConstancyReport proportionality_constancy(Family f, const DomainGeometry& geom,
                                          const std::vector<std::vector<cplx>>& configs) {
  if (configs.empty()) throw std::invalid_argument("proportionality_constancy: no configurations");
  std::vector<double> logs;
  for (const auto& c : configs) logs.push_back(log_proportionality_ratio(f, geom, c));
  std::vector<double> sorted = logs;
  std::sort(sorted.begin(), sorted.end());
  ConstancyReport r;
  const std::size_t m = sorted.size();
  r.median_log = (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  // ratios relative to the median keep the statistics in range
  double mean = 0.0, sq = 0.0;
  for (double v : logs) mean += std::exp(v - r.median_log);
  mean /= m;
  for (double v : logs) sq += (std::exp(v - r.median_log) - mean) * (std::exp(v - r.median_log) - mean);
  r.mean = mean * std::exp(r.median_log);
  r.std_over_mean = std::sqrt(sq / m) / mean;
  return r;
}

double log_plasma_partition(Family f, const DomainGeometry& geom, int n) {
  require_solvable_family(f, n, "log_plasma_partition");
  const double lw = geom.area(), nn = n, le = log_eta(geom);
  switch (f) {
    case Family::A: return 0.5 * nn * std::log(2.0 * kPi * kPi * lw / nn) + 2.0 * le;
    case Family::C:
      return 0.5 * nn * std::log(4.0 * kPi * kPi * lw / (nn + 1)) + std::log(geom.length() / (2.0 * kPi)) - 2.0 * le;
    default:
      return 0.5 * nn * std::log(4.0 * kPi * kPi * lw / (nn - 1)) + std::log(geom.length() / (8.0 * kPi)) - 2.0 * le;
  }
}

double log_plasma_partition_with_exponential(Family f, const DomainGeometry& geom, int n) {
  const double base = log_plasma_partition(f, geom, n);
  const double tpi = -kPi * geom.width() / geom.length();
  switch (f) {
    case Family::C: return base - (n + 1) * tpi / 4.0;
    case Family::D: return base + (n - 1) * tpi / 4.0;
    default: return base;
  }
}

FreeEnergy free_energy_expansion(Family f, const DomainGeometry& geom, int n) {
  require_solvable_family(f, n, "free_energy_expansion");
  const double rho = n / geom.area();
  const double it = geom.tau().imag();
  const double le = log_eta(geom);
  const double f_gff = std::log(2.0 * std::sqrt(kPi * it)) + 2.0 * le;
  FreeEnergy fe;
  fe.exact = -log_plasma_partition(f, geom, n) / n;
  switch (f) {
    case Family::A:
      fe.f0 = 0.5 * std::log(rho / (2.0 * kPi * kPi));
      fe.f1 = -2.0 * le;
      break;
    case Family::C:
      fe.f0 = 0.5 * std::log(rho / (4.0 * kPi * kPi));
      fe.f1 = f_gff + 0.5 * std::log(kPi * rho) + 0.5;
      fe.log_term = -std::log(static_cast<double>(n)) / (2.0 * n);
      break;
    default:
      fe.f0 = 0.5 * std::log(rho / (4.0 * kPi * kPi));
      fe.f1 = f_gff + 0.5 * std::log(16.0 * kPi * rho) - 0.5;
      fe.log_term = -std::log(static_cast<double>(n)) / (2.0 * n);
      break;
  }
  fe.residual = fe.exact - (fe.f0 + fe.log_term + fe.f1 / n);
  return fe;
}

double gff_modular_residual(const ModularTau& tau) {
  const ModularTau inv(-1.0 / tau.value());
  const double a = 0.5 * std::log(tau.imag()) + 2.0 * log_dedekind_eta(tau).real();
  const double b = 0.5 * std::log(inv.imag()) + 2.0 * log_dedekind_eta(inv).real();
  return std::abs(std::expm1(a - b));
}

GffReport gff_comparison(const DomainGeometry& geom, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("gff_comparison: rho must be positive");
  const ModularTau tau = geom.tau();
  const double le = log_eta(geom);
  GffReport r;
  r.f_gff_nonzero = 2.0 * le;
  r.f_gff = std::log(2.0 * std::sqrt(kPi * tau.imag())) + 2.0 * le;
  r.f1_a = -2.0 * le;
  r.f1_c_minus_gff = 0.5 * std::log(kPi * rho) + 0.5;
  r.f1_d_minus_gff = 0.5 * std::log(16.0 * kPi * rho) - 0.5;
  r.modular_residual = gff_modular_residual(tau);
  return r;
}

}  // namespace edpp
