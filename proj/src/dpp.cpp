#include "edpp/dpp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace edpp {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kFloor = 1e-30;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kFloor}); }

}  // namespace

Configuration::Configuration(std::vector<cplx> pts, const DomainGeometry& g) : points(std::move(pts)), geom(g) {
  for (cplx& p : points) p = geom.wrap(p);
}

ParityConstants parity_constants(const RootSystemSpec& spec) {
  ParityConstants p;
  const bool even = spec.n() % 2 == 0;
  p.s = even ? 0 : 3;
  p.s_tilde = even ? 0 : 1;
  switch (spec.family()) {
    case Family::A: p.sgn_l = even ? -1 : 1; break;
    case Family::Bv:
    case Family::C:
    case Family::D: p.sgn_l = 1; break;
    case Family::B:
    case Family::Cv:
    case Family::BC: p.sgn_l = -1; break;
  }
  p.sgn_iw = (spec.family() == Family::B || spec.family() == Family::Bv) ? -1 : 1;
  return p;
}

KernelContext::KernelContext(const RootSystemSpec& spec, const DomainGeometry& geom)
    : norms_(h_norm_table(spec, geom)) {}

Scaled weight_c_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  const double nn = script_n(spec);
  double ysq = 0.0;
  cplx sum(0.0, 0.0);
  for (cplx p : z) {
    ysq += p.imag() * p.imag();
    sum += p / geom.length();
  }
  Scaled c = Scaled::from_exp(-kPi * nn * ysq / geom.area());
  if (spec.family() == Family::A) {
    c = c * theta_scaled(theta_index(parity_constants(spec).s), sum, geom.tau());
  }
  return c;
}

Scaled q_lower_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  std::vector<cplx> xi(z.begin(), z.end());
  for (cplx& x : xi) x /= geom.length();
  return weight_c_scaled(spec, geom, z) * macdonald_denominator_scaled(spec, xi, geom.tau());
}

double log_weight_q(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  return 2.0 * q_lower_scaled(spec, geom, z).log_abs();
}

double weight_q(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  return std::exp(log_weight_q(spec, geom, z));
}

cplx weight_c(const RootSystemSpec& spec, const Configuration& config) {
  return weight_c_scaled(spec, config.geom, config.points).value();
}

double weight_q(const RootSystemSpec& spec, const Configuration& config) {
  return weight_q(spec, config.geom, config.points);
}

double quasi_periodicity_residual_q_lower(const RootSystemSpec& spec, const DomainGeometry& geom,
                                          std::span<const cplx> z, int m) {
  if (m < 1 || m > static_cast<int>(z.size())) throw std::out_of_range("quasi_periodicity_residual: m");
  const ParityConstants pc = parity_constants(spec);
  const Scaled q0 = q_lower_scaled(spec, geom, z);
  std::vector<cplx> zl(z.begin(), z.end());
  zl[m - 1] += geom.length();
  const Scaled ql = q_lower_scaled(spec, geom, zl);
  const double r1 = relative_difference(ql, q0 * cplx(pc.sgn_l, 0.0), kFloor);
  std::vector<cplx> zw(z.begin(), z.end());
  zw[m - 1] += cplx(0.0, geom.width());
  const Scaled qw = q_lower_scaled(spec, geom, zw);
  const double nn = script_n(spec);
  const cplx phase = double(pc.sgn_iw) * std::exp(-2.0 * kPi * kI * nn * z[m - 1].real() / geom.length());
  const double r2 = relative_difference(qw, q0 * phase, kFloor);
  return std::max(r1, r2);
}

double q_double_periodicity_residual(const RootSystemSpec& spec, const DomainGeometry& geom,
                                     std::span<const cplx> z) {
  const double q0 = log_weight_q(spec, geom, z);
  double worst = 0.0;
  for (std::size_t m = 0; m < z.size(); ++m) {
    for (cplx shift : {cplx(geom.length(), 0.0), cplx(0.0, geom.width())}) {
      std::vector<cplx> zs(z.begin(), z.end());
      zs[m] += shift;
      // relative residual of Q from the log difference
      worst = std::max(worst, std::abs(std::expm1(log_weight_q(spec, geom, zs) - q0)));
    }
  }
  return worst;
}

double log_partition_z(const RootSystemSpec& spec, const DomainGeometry& geom) {
  const double n = spec.n();
  const double nn = script_n(spec);
  const ModularTau tau = geom.tau();
  const cplx t = tau.value();
  const double le = log_dedekind_eta(tau).real();
  double delta = 0.0, kappa = 0.0, lg = 0.0;
  switch (spec.family()) {
    case Family::A:
      delta = -n / 2.0;
      kappa = (n - 1) * (n - 2);
      break;
    case Family::B:
      delta = (n - 2) / 2.0;
      kappa = 2 * n * (n - 1);
      break;
    case Family::Bv:
      delta = (n - 2) / 2.0;
      kappa = 2 * (n - 1) * (n + 1);
      lg = 2 * (n - 1) * (log_dedekind_eta(ModularTau(2.0 * t)).real() - 2 * le);
      break;
    case Family::C:
      delta = n / 2.0;
      kappa = 2 * n * (n - 1);
      break;
    case Family::Cv:
      delta = n / 2.0;
      kappa = (n - 1) * (2 * n - 1);
      lg = (n - 1) * (2 * log_dedekind_eta(ModularTau(t / 2.0)).real() - le);
      break;
    case Family::BC:
      delta = n / 2.0;
      kappa = 2 * n * (n + 1);
      lg = 2 * n * (log_dedekind_eta(ModularTau(2.0 * t)).real() - 2 * le);
      break;
    case Family::D:
      delta = (n - 4) / 2.0;
      kappa = 2 * n * (n - 2);
      break;
  }
  return delta * std::log(2.0) + n * std::log(geom.area()) - 0.5 * n * std::log(nn * tau.imag()) + kappa * le + lg;
}

double partition_z(const RootSystemSpec& spec, const DomainGeometry& geom) {
  return std::exp(log_partition_z(spec, geom));
}

double log_density_p(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  return log_weight_q(spec, geom, z) - log_partition_z(spec, geom);
}

double density_p(const RootSystemSpec& spec, const Configuration& config) {
  return std::exp(log_density_p(spec, config.geom, config.points));
}

cplx kernel_eval(const KernelContext& ctx, cplx z, cplx zp) {
  const std::vector<cplx> a = ctx.features(z);
  const std::vector<cplx> b = ctx.features(zp);
  cplx s(0.0, 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * std::conj(b[n]);
  return s;
}

double kernel_quasi_periodicity_residual(const KernelContext& ctx, cplx z, cplx zp) {
  const RootSystemSpec& spec = ctx.spec();
  const double l = ctx.geom().length();
  const double w = ctx.geom().width();
  const double nn = script_n(spec);
  // the L-shift sign coincides with the sign of the weight's quasi-periodicity
  const double sl = parity_constants(spec).sgn_l;
  const double sw = (spec.family() == Family::B || spec.family() == Family::Bv) ? -1.0 : 1.0;
  const cplx k0 = kernel_eval(ctx, z, zp);
  double r = rel(kernel_eval(ctx, z + l, zp), sl * k0);
  r = std::max(r, rel(kernel_eval(ctx, z, zp + l), sl * k0));
  r = std::max(r, rel(kernel_eval(ctx, z + cplx(0.0, w), zp), sw * std::exp(-2.0 * kPi * kI * nn * z.real() / l) * k0));
  r = std::max(r, rel(kernel_eval(ctx, z, zp + cplx(0.0, w)), sw * std::exp(2.0 * kPi * kI * nn * zp.real() / l) * k0));
  return r;
}

double correlation(const KernelContext& ctx, std::span<const cplx> points) {
  const int m = static_cast<int>(points.size());
  if (m < 1 || m > ctx.n()) throw std::out_of_range("correlation: number of points must be in 1..N");
  std::vector<std::vector<cplx>> phi;
  phi.reserve(m);
  for (cplx p : points) phi.push_back(ctx.features(p));
  Eigen::MatrixXcd k(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      cplx s(0.0, 0.0);
      for (int n = 0; n < ctx.n(); ++n) s += phi[a][n] * std::conj(phi[b][n]);
      k(a, b) = s;
    }
  }
  const cplx d = (m == 1) ? k(0, 0) : k.partialPivLu().determinant();
  double scale = 1.0;
  for (int a = 0; a < m; ++a) scale *= std::max(std::abs(k(a, a)), kFloor);
  if (std::abs(d.imag()) > 1e-12 * std::max(scale, std::abs(d))) {
    throw std::runtime_error("correlation: determinant has a non-negligible imaginary part");
  }
  return d.real();
}

double kernel_trace(const KernelContext& ctx, const QuadratureSpec& q) {
  auto f = [&](double x, double y) { return kernel_eval(ctx, cplx(x, y), cplx(x, y)); };
  return integrate_rect(f, {0.0, ctx.geom().length()}, {0.0, ctx.geom().width()}, q).real();
}

double reproducing_residual(const KernelContext& ctx, cplx z, cplx zp, const QuadratureSpec& q) {
  const std::vector<cplx> a = ctx.features(z);
  const std::vector<cplx> b = ctx.features(zp);
  const int n = ctx.n();
  auto f = [&](double x, double y) {
    const std::vector<cplx> w = ctx.features(cplx(x, y));
    cplx kzw(0.0, 0.0), kwz(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      kzw += a[i] * std::conj(w[i]);
      kwz += w[i] * std::conj(b[i]);
    }
    return kzw * kwz;
  };
  const cplx lhs = integrate_rect(f, {0.0, ctx.geom().length()}, {0.0, ctx.geom().width()}, q);
  cplx k(0.0, 0.0);
  for (int i = 0; i < n; ++i) k += a[i] * std::conj(b[i]);
  if (std::abs(k) < 1e-10) return std::abs(lhs - k);
  return std::abs(lhs - k) / std::abs(k);
}

double det_consistency_residual(const KernelContext& ctx, std::span<const cplx> z) {
  const double d = correlation(ctx, z);
  // N! times the symmetric density normalized to one, Q / (N! Z), i.e. Q / Z
  const double lhs = std::exp(log_density_p(ctx.spec(), ctx.geom(), z));
  return std::abs(lhs - d) / std::max({std::abs(lhs), std::abs(d), kFloor});
}

}  // namespace edpp
