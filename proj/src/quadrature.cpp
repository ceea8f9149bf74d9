#include "edpp/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace edpp {

namespace {

struct UnitRule {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

UnitRule compute_gauss_legendre(int n) {
  UnitRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const UnitRule& gauss_legendre_unit(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<UnitRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<UnitRule>(compute_gauss_legendre(n))).first;
  return *it->second;
}

void check_node(cplx v, double x, double y, bool two_d) {
  if (std::isfinite(v.real()) && std::isfinite(v.imag())) return;
  std::ostringstream os;
  os << "quadrature: non-finite integrand at x=" << x;
  if (two_d) os << ", y=" << y;
  throw std::domain_error(os.str());
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nx < 4 || ny < 4) throw std::invalid_argument("QuadratureSpec: nx and ny must be at least 4");
}

Nodes rule_nodes(Rule rule, double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("rule_nodes: n must be positive");
  Nodes out;
  out.x.resize(n);
  out.w.resize(n);
  const double h = (b - a) / n;
  switch (rule) {
    case Rule::periodic_trapezoid:
      for (int i = 0; i < n; ++i) {
        out.x[i] = a + i * h;
        out.w[i] = h;
      }
      break;
    case Rule::midpoint:
      for (int i = 0; i < n; ++i) {
        out.x[i] = a + (i + 0.5) * h;
        out.w[i] = h;
      }
      break;
    case Rule::gauss_legendre: {
      const UnitRule& u = gauss_legendre_unit(n);
      const double c = 0.5 * (a + b);
      const double r = 0.5 * (b - a);
      for (int i = 0; i < n; ++i) {
        out.x[i] = c + r * u.x[i];
        out.w[i] = r * u.w[i];
      }
      break;
    }
  }
  return out;
}

void CompensatedSum::add(cplx v) {
  auto step = [](double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  };
  step(re_, cre_, v.real());
  step(im_, cim_, v.imag());
}

cplx integrate_interval(const Integrand1D& f, std::pair<double, double> range, int n, Rule rule) {
  const Nodes nd = rule_nodes(rule, range.first, range.second, n);
  CompensatedSum s;
  for (int i = 0; i < n; ++i) {
    const cplx v = f(nd.x[i]);
    check_node(v, nd.x[i], 0.0, false);
    s.add(nd.w[i] * v);
  }
  return s.value();
}

cplx integrate_rect(const Integrand2D& f, std::pair<double, double> x_range, std::pair<double, double> y_range,
                    const QuadratureSpec& spec) {
  spec.validate();
  const Nodes nx = rule_nodes(spec.rule_x, x_range.first, x_range.second, spec.nx);
  const Nodes ny = rule_nodes(spec.rule_y, y_range.first, y_range.second, spec.ny);
  CompensatedSum s;
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const cplx v = f(nx.x[i], ny.x[j]);
      check_node(v, nx.x[i], ny.x[j], true);
      s.add(nx.w[i] * ny.w[j] * v);
    }
  }
  return s.value();
}

RefineResult refine_until(const std::function<cplx(int)>& estimate, double tol, int max_doublings) {
  if (!(tol > 0.0)) throw std::invalid_argument("refine_until: tol must be positive");
  RefineResult r;
  cplx prev = estimate(0);
  for (int k = 1; k <= max_doublings; ++k) {
    const cplx cur = estimate(k);
    const double scale = std::max(std::abs(cur), std::abs(prev));
    r.value = cur;
    r.doublings = k;
    r.delta = scale == 0.0 ? 0.0 : std::abs(cur - prev) / scale;
    if (r.delta < tol || scale == 0.0) {
      r.converged = true;
      return r;
    }
    prev = cur;
  }
  if (max_doublings <= 0) r.value = prev;
  return r;
}

RefineResult refine_interval(const Integrand1D& f, std::pair<double, double> range, int n, Rule rule, double tol,
                             int max_doublings) {
  return refine_until([&](int k) { return integrate_interval(f, range, n << k, rule); }, tol, max_doublings);
}

RefineResult refine_rect(const Integrand2D& f, std::pair<double, double> x_range, std::pair<double, double> y_range,
                         const QuadratureSpec& spec, double tol, int max_doublings) {
  return refine_until(
      [&](int k) {
        QuadratureSpec s = spec;
        s.nx <<= k;
        s.ny <<= k;
        return integrate_rect(f, x_range, y_range, s);
      },
      tol, max_doublings);
}

}  // namespace edpp
