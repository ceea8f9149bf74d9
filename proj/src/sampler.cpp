#include "edpp/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace edpp {

namespace {

constexpr double kRankThreshold = 1e-12;

double intensity(const std::vector<cplx>& phi) {
  double s = 0.0;
  for (cplx p : phi) s += std::norm(p);
  return s;
}

// squared norm of phi after removing its component in span(basis); basis is orthonormal
double residual_norm2(const std::vector<cplx>& phi, const Eigen::MatrixXcd& basis) {
  const int n = static_cast<int>(phi.size());
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = phi[i];
  if (basis.cols() > 0) v -= basis * (basis.adjoint() * v);
  return v.squaredNorm();
}

void check_same_geometry(const std::vector<Configuration>& samples) {
  if (samples.empty()) throw std::invalid_argument("estimate_one_point: no samples");
  const DomainGeometry& g = samples.front().geom;
  for (const Configuration& c : samples) {
    if (c.geom.length() != g.length() || c.geom.width() != g.width()) {
      throw std::invalid_argument("estimate_one_point: samples come from different geometries");
    }
  }
}

}  // namespace

void SamplerOptions::validate() const {
  if (!(envelope_safety > 1.0)) throw std::invalid_argument("SamplerOptions: envelope_safety must exceed 1");
  if (max_rejections < 1000) throw std::invalid_argument("SamplerOptions: max_rejections must be at least 1000");
  if (envelope_grid < 2) throw std::invalid_argument("SamplerOptions: envelope_grid must be at least 2");
}

double intensity_envelope(const KernelContext& ctx, const SamplerOptions& opts) {
  opts.validate();
  const int g = opts.envelope_grid;
  const double l = ctx.geom().length();
  const double w = ctx.geom().width();
  double peak = 0.0;
  // K(z,z) is periodic in both directions, so a half-open grid covers the torus
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < g; ++i) {
      peak = std::max(peak, intensity(ctx.features(cplx(l * i / g, w * j / g))));
    }
  }
  return opts.envelope_safety * peak;
}

Sampler::Sampler(const KernelContext& ctx, const SamplerOptions& opts) : ctx_(ctx), opts_(opts), rng_(opts.seed) {
  opts_.validate();
  stats_.envelope = intensity_envelope(ctx_, opts_);
}

double Sampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

Configuration Sampler::sample() {
  const int n = ctx_.n();
  const double l = ctx_.geom().length();
  const double w = ctx_.geom().width();
  std::vector<cplx> points;
  std::vector<std::vector<cplx>> fixed;
  Eigen::MatrixXcd basis(n, 0);
  while (static_cast<int>(points.size()) < n) {
    long rejections = 0;
    for (;;) {
      if (rejections >= opts_.max_rejections) {
        std::ostringstream msg;
        msg << "sample_configuration: " << rejections << " rejections at point " << points.size() + 1
            << "; raise envelope_safety";
        throw std::runtime_error(msg.str());
      }
      const cplx z(l * uniform(), w * uniform());
      const double u = uniform();
      ++stats_.proposals;
      const std::vector<cplx> phi = ctx_.features(z);
      const double r = residual_norm2(phi, basis);
      if (!(r >= 0.0)) throw std::logic_error("sample_configuration: negative conditional density");
      if (r > stats_.envelope) {
        std::ostringstream msg;
        msg << "sample_configuration: conditional intensity " << r << " exceeds envelope " << stats_.envelope
            << " at z = " << z;
        throw std::runtime_error(msg.str());
      }
      if (u * stats_.envelope >= r) {
        ++rejections;
        continue;
      }
      const int k = static_cast<int>(fixed.size()) + 1;
      Eigen::MatrixXcd f(n, k);
      for (int c = 0; c + 1 < k; ++c) {
        for (int i = 0; i < n; ++i) f(i, c) = fixed[c][i];
      }
      for (int i = 0; i < n; ++i) f(i, k - 1) = phi[i];
      Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(f);
      qr.setThreshold(kRankThreshold);
      if (qr.rank() < k) {
        // numerically coincident with a fixed point; redraw this step
        ++rejections;
        continue;
      }
      basis = qr.householderQ() * Eigen::MatrixXcd::Identity(n, k);
      fixed.push_back(phi);
      points.push_back(z);
      ++stats_.accepted;
      break;
    }
  }
  return Configuration(std::move(points), ctx_.geom());
}

Configuration sample_configuration(const KernelContext& ctx, const SamplerOptions& opts) {
  Sampler s(ctx, opts);
  return s.sample();
}

std::vector<Configuration> sample_many(const KernelContext& ctx, const SamplerOptions& opts, int count) {
  if (count < 0) throw std::invalid_argument("sample_many: negative count");
  Sampler s(ctx, opts);
  std::vector<Configuration> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(s.sample());
  return out;
}

Grid bin_counts(const std::vector<Configuration>& samples, int bx, int by) {
  if (bx < 1 || by < 1) throw std::invalid_argument("bin_counts: bins must be positive");
  check_same_geometry(samples);
  const double l = samples.front().geom.length();
  const double w = samples.front().geom.width();
  Grid g{bx, by, std::vector<double>(static_cast<std::size_t>(bx) * by, 0.0)};
  for (const Configuration& c : samples) {
    for (cplx p : c.points) {
      const int i = std::clamp(static_cast<int>(std::floor(p.real() / l * bx)), 0, bx - 1);
      const int j = std::clamp(static_cast<int>(std::floor(p.imag() / w * by)), 0, by - 1);
      g.at(i, j) += 1.0;
    }
  }
  return g;
}

Grid estimate_one_point(const std::vector<Configuration>& samples, int bx, int by) {
  Grid g = bin_counts(samples, bx, by);
  const double cell = samples.front().geom.area() / (static_cast<double>(bx) * by);
  for (double& v : g.values) v /= static_cast<double>(samples.size()) * cell;
  return g;
}

Grid expected_counts(const KernelContext& ctx, int samples, int bx, int by, int nodes_per_bin) {
  if (bx < 1 || by < 1 || samples < 0) throw std::invalid_argument("expected_counts: bad arguments");
  const double l = ctx.geom().length();
  const double w = ctx.geom().width();
  Grid g{bx, by, std::vector<double>(static_cast<std::size_t>(bx) * by, 0.0)};
  QuadratureSpec q;
  q.nx = nodes_per_bin;
  q.ny = nodes_per_bin;
  q.rule_x = Rule::gauss_legendre;
  q.rule_y = Rule::gauss_legendre;
  for (int j = 0; j < by; ++j) {
    for (int i = 0; i < bx; ++i) {
      auto f = [&](double x, double y) { return cplx(intensity(ctx.features(cplx(x, y))), 0.0); };
      const cplx v = integrate_rect(f, {l * i / bx, l * (i + 1) / bx}, {w * j / by, w * (j + 1) / by}, q);
      g.at(i, j) = samples * v.real();
    }
  }
  return g;
}

ChiSquareReport chi_square_report(const Grid& empirical, const Grid& expected, double alpha) {
  if (empirical.bx != expected.bx || empirical.by != expected.by ||
      empirical.values.size() != expected.values.size()) {
    throw std::invalid_argument("chi_square_report: grid shapes differ");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("chi_square_report: alpha must be in (0,1)");
  // pool bins in row-major order until each pool expects at least 5
  std::vector<std::pair<double, double>> pools;
  double obs = 0.0, exp = 0.0;
  for (std::size_t i = 0; i < expected.values.size(); ++i) {
    obs += empirical.values[i];
    exp += expected.values[i];
    if (exp >= 5.0) {
      pools.emplace_back(obs, exp);
      obs = exp = 0.0;
    }
  }
  if (obs != 0.0 || exp != 0.0) {
    if (pools.empty()) {
      pools.emplace_back(obs, exp);
    } else {
      pools.back().first += obs;
      pools.back().second += exp;
    }
  }
  ChiSquareReport rep;
  for (const auto& [o, e] : pools) {
    if (e > 0.0) {
      rep.statistic += (o - e) * (o - e) / e;
    } else if (o != 0.0) {
      rep.statistic = std::numeric_limits<double>::infinity();
    }
  }
  rep.dof = std::max(1, static_cast<int>(pools.size()) - 1);
  const boost::math::chi_squared dist(rep.dof);
  rep.critical = boost::math::quantile(boost::math::complement(dist, alpha));
  rep.p_value = std::isfinite(rep.statistic) ? boost::math::cdf(boost::math::complement(dist, rep.statistic)) : 0.0;
  rep.pass = rep.statistic <= rep.critical;
  return rep;
}

}  // namespace edpp
