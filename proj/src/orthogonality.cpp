#include "edpp/orthogonality.hpp"

#include <cmath>
#include <stdexcept>

namespace edpp {

namespace {

const cplx kI(0.0, 1.0);

Scaled sqrt_scaled(const Scaled& s) { return Scaled{0.5 * s.log_scale, std::sqrt(s.mantissa)}.normalized(); }

Scaled m_pair(double jj, double nn, const DomainGeometry& geom, double y) {
  const double l = geom.length();
  const cplx t = geom.tau().value();
  const ModularTau t2(2.0 * nn * t);
  const Scaled plus = Scaled::from_exp(4.0 * kPi * jj * y / l) *
                      theta_scaled(ThetaIndex::two, 2.0 * (jj * t - kI * nn * y / l), t2);
  const Scaled minus = Scaled::from_exp(-4.0 * kPi * jj * y / l) *
                       theta_scaled(ThetaIndex::two, 2.0 * (jj * t + kI * nn * y / l), t2);
  return (plus + minus) * cplx(l, 0.0);
}

}  // namespace

double NormTable::h(int j) const { return std::exp(log_h.at(j - 1)); }

Scaled m_weight_y_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, int j, double y) {
  const int n = spec.n();
  if (j < 1 || j > n) throw std::out_of_range("m_weight_y: j out of range");
  const double nn = script_n(spec);
  const double jj = offset_j(spec, j);
  const double l = geom.length();
  const cplx t = geom.tau().value();
  const ModularTau t2(2.0 * nn * t);
  switch (spec.family()) {
    case Family::A:
      return Scaled::from_exp(-4.0 * kPi * jj * y / l) *
             theta_scaled(ThetaIndex::two, 2.0 * (jj * t + kI * nn * y / l), t2) * cplx(l, 0.0);
    case Family::C:
    case Family::Cv:
    case Family::BC: return m_pair(jj, nn, geom, y);
    case Family::B:
    case Family::Bv:
      if (j == 1) return theta_scaled(ThetaIndex::two, 2.0 * kI * nn * y / l, t2) * cplx(4.0 * l, 0.0);
      return m_pair(jj, nn, geom, y);
    case Family::D:
      if (j == 1) return theta_scaled(ThetaIndex::two, 2.0 * kI * nn * y / l, t2) * cplx(4.0 * l, 0.0);
      if (j == n) return m_pair(jj, nn, geom, y) * cplx(2.0, 0.0);
      return m_pair(jj, nn, geom, y);
  }
  return {};
}

cplx m_weight_y(const RootSystemSpec& spec, const DomainGeometry& geom, int j, double y) {
  return m_weight_y_scaled(spec, geom, j, y).value();
}

NormTable h_norm_table(const RootSystemSpec& spec, const DomainGeometry& geom) {
  NormTable t{spec, geom, {}};
  const int n = spec.n();
  const double nn = script_n(spec);
  const double aspect = geom.width() / geom.length();
  const double base = std::log(geom.area()) - 0.5 * std::log(2.0 * nn * aspect);
  for (int j = 1; j <= n; ++j) {
    const double jj = offset_j(spec, j);
    double mult = 1.0;
    switch (spec.family()) {
      case Family::A: mult = 1.0; break;
      case Family::C:
      case Family::Cv:
      case Family::BC: mult = 2.0; break;
      case Family::B:
      case Family::Bv: mult = (j == 1) ? 4.0 : 2.0; break;
      case Family::D: mult = (j == 1 || j == n) ? 4.0 : 2.0; break;
    }
    t.log_h.push_back(base + std::log(mult) + 2.0 * kPi * aspect * jj * jj / nn);
  }
  return t;
}

std::vector<cplx> feature_vector(const NormTable& norms, cplx z) {
  const RootSystemSpec& spec = norms.spec;
  const DomainGeometry& geom = norms.geom;
  const double nn = script_n(spec);
  const double y = z.imag();
  const double gauss = -kPi * nn * y * y / geom.area();
  std::vector<cplx> phi(spec.n());
  for (int j = 1; j <= spec.n(); ++j) {
    Scaled m = m_function_scaled(spec, geom, j, z);
    m.log_scale += gauss - 0.5 * norms.log_h[j - 1];
    phi[j - 1] = m.value();
  }
  return phi;
}

double verify_x_orthogonality(const RootSystemSpec& spec, const DomainGeometry& geom, int j, int k, double y,
                              int nx) {
  if (j < 1 || j > spec.n() || k < 1 || k > spec.n()) throw std::out_of_range("verify_x_orthogonality: index");
  const Scaled mj = m_weight_y_scaled(spec, geom, j, y);
  const Scaled mk = m_weight_y_scaled(spec, geom, k, y);
  const Scaled sj = sqrt_scaled(mj);
  const Scaled sk = sqrt_scaled(mk);
  auto f = [&](double x) {
    const cplx z(x, y);
    const Scaled a = m_function_scaled(spec, geom, j, z) / sj;
    const Scaled b = m_function_scaled(spec, geom, k, z) / sk;
    return (a.conj() * b).value();
  };
  const RefineResult r = refine_interval(f, {0.0, geom.length()}, nx, Rule::periodic_trapezoid, 1e-12, 3);
  const cplx expect = (j == k) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  return std::abs(r.value - expect);
}

GramReport gram_matrix(const RootSystemSpec& spec, const DomainGeometry& geom, const QuadratureSpec& q, double tol,
                       int max_doublings) {
  const NormTable norms = h_norm_table(spec, geom);
  const int n = spec.n();
  GramReport rep;
  auto estimate = [&](int level) {
    QuadratureSpec s = q;
    s.nx <<= level;
    s.ny <<= level;
    s.validate();
    const Nodes nx = rule_nodes(s.rule_x, 0.0, geom.length(), s.nx);
    const Nodes ny = rule_nodes(s.rule_y, 0.0, geom.width(), s.ny);
    std::vector<CompensatedSum> acc(n * n);
    for (int b = 0; b < s.ny; ++b) {
      for (int a = 0; a < s.nx; ++a) {
        const std::vector<cplx> phi = feature_vector(norms, cplx(nx.x[a], ny.x[b]));
        const double w = nx.w[a] * ny.w[b];
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) acc[j * n + k].add(w * std::conj(phi[j]) * phi[k]);
        }
      }
    }
    std::vector<std::vector<cplx>> g(n, std::vector<cplx>(n));
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) g[j][k] = acc[j * n + k].value();
    }
    return g;
  };
  std::vector<std::vector<cplx>> prev = estimate(0);
  std::vector<std::vector<cplx>> cur = prev;
  rep.converged = false;
  for (int level = 1; level <= max_doublings; ++level) {
    cur = estimate(level);
    double delta = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) delta = std::max(delta, std::abs(cur[j][k] - prev[j][k]));
    }
    prev = cur;
    if (delta < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.normalized = cur;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const cplx expect = (j == k) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      rep.max_residual = std::max(rep.max_residual, std::abs(cur[j][k] - expect));
    }
  }
  return rep;
}

double verify_z_orthogonality(const RootSystemSpec& spec, const DomainGeometry& geom, int j, int k,
                              const QuadratureSpec& q) {
  if (j < 1 || j > spec.n() || k < 1 || k > spec.n()) throw std::out_of_range("verify_z_orthogonality: index");
  const NormTable norms = h_norm_table(spec, geom);
  auto f = [&](double x, double y) {
    const std::vector<cplx> phi = feature_vector(norms, cplx(x, y));
    return std::conj(phi[j - 1]) * phi[k - 1];
  };
  const RefineResult r = refine_rect(f, {0.0, geom.length()}, {0.0, geom.width()}, q, 1e-10, 2);
  const cplx expect = (j == k) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  return std::abs(r.value - expect);
}

double h_from_m_residual(const RootSystemSpec& spec, const DomainGeometry& geom, int j, int ny) {
  const NormTable norms = h_norm_table(spec, geom);
  const double nn = script_n(spec);
  auto f = [&](double y) {
    Scaled m = m_weight_y_scaled(spec, geom, j, y);
    m.log_scale += -2.0 * kPi * nn * y * y / geom.area() - norms.log_h[j - 1];
    return m.value();
  };
  const RefineResult r = refine_interval(f, {0.0, geom.width()}, ny, Rule::gauss_legendre, 1e-13, 3);
  return std::abs(r.value - 1.0);
}

}  // namespace edpp
