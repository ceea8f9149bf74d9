#include "edpp/limits.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace edpp {

namespace {

const cplx kI(0.0, 1.0);

Letter letter_of(LimitClass c) {
  switch (c) {
    case LimitClass::A: return Letter::A;
    case LimitClass::B: return Letter::B;
    case LimitClass::C: return Letter::C;
    case LimitClass::D: return Letter::D;
  }
  return Letter::A;
}

// sum of Gauss-Legendre estimates with doubling; converged when the change is below tol
// relative to max(|value|, integral of |f|), so exact cancellations still terminate
template <class F>
cplx refine_gl(F&& f, double a, double b, const StripQuadrature& q, const char* what) {
  auto estimate = [&](int n, double& mass) {
    const Nodes nd = rule_nodes(Rule::gauss_legendre, a, b, n);
    CompensatedSum s;
    mass = 0.0;
    for (std::size_t i = 0; i < nd.x.size(); ++i) {
      double m = 0.0;
      const cplx v = f(nd.x[i], m);
      s.add(nd.w[i] * v);
      mass += nd.w[i] * m;
    }
    return s.value();
  };
  double mass = 0.0;
  cplx prev = estimate(q.nodes, mass);
  for (int k = 1; k <= q.max_doublings; ++k) {
    double m = 0.0;
    const cplx cur = estimate(q.nodes << k, m);
    if (std::abs(cur - prev) <= q.tol * std::max(std::abs(cur), m)) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << what << ": lambda quadrature did not converge to " << q.tol;
  throw std::runtime_error(msg.str());
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string limit_class_name(LimitClass c) {
  switch (c) {
    case LimitClass::A: return "A";
    case LimitClass::B: return "B";
    case LimitClass::C: return "C";
    case LimitClass::D: return "D";
  }
  return "?";
}

LimitClass parse_limit_class(const std::string& name) {
  if (name == "A") return LimitClass::A;
  if (name == "B") return LimitClass::B;
  if (name == "C") return LimitClass::C;
  if (name == "D") return LimitClass::D;
  throw std::invalid_argument("unknown limit class '" + name + "' (expected A, B, C or D)");
}

LimitClass limit_class_of(Family f) {
  switch (f) {
    case Family::A: return LimitClass::A;
    case Family::B:
    case Family::Bv: return LimitClass::B;
    case Family::C:
    case Family::Cv:
    case Family::BC: return LimitClass::C;
    case Family::D: return LimitClass::D;
  }
  return LimitClass::A;
}

void StripParams::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("StripParams: rho must be positive");
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("StripParams: width must be positive");
}

double StripParams::lambda_max() const { return std::sqrt(rho) * width; }

cplx strip_kernel(LimitClass c, const StripParams& p, cplx z, cplx zp, const StripQuadrature& q) {
  p.validate();
  const double sr = std::sqrt(p.rho);
  const double w = p.width;
  const cplx zc = std::conj(zp);
  const double y = z.imag(), yp = zp.imag();
  if (c == LimitClass::A) {
    const ModularTau tau(cplx(0.0, p.rho * w * w));
    const double g = -kPi * p.rho * (y * y + yp * yp);
    auto f = [&](double lam, double& mass) {
      const Scaled t = Scaled::from_exp(g - 2.0 * kPi * lam * lam + 2.0 * kPi * kI * sr * (z - zc) * lam) *
                       theta_scaled(ThetaIndex::two, sr * w * (kI * lam + sr * z), tau) *
                       theta_scaled(ThetaIndex::two, sr * w * (kI * lam - sr * zc), tau);
      mass = std::exp(t.log_abs());
      return t.value();
    };
    return std::sqrt(2.0) * p.rho * refine_gl(f, 0.0, sr * w, q, "strip_kernel");
  }
  const ModularTau tau(cplx(0.0, 2.0 * p.rho * w * w));
  const ThetaIndex mu = (c == LimitClass::B) ? ThetaIndex::one : ThetaIndex::two;
  const double sgn = (c == LimitClass::D) ? 1.0 : -1.0;
  const double g = -2.0 * kPi * p.rho * (y * y + yp * yp);
  auto f = [&](double lam, double& mass) {
    const Scaled a = theta_scaled(mu, sr * w * (kI * lam + 2.0 * sr * z), tau);
    const Scaled t1 = Scaled::from_exp(g - kPi * lam * lam + 2.0 * kPi * kI * sr * (z - zc) * lam) * a *
                      theta_scaled(mu, sr * w * (kI * lam - 2.0 * sr * zc), tau);
    const Scaled t2 = Scaled::from_exp(g - kPi * lam * lam + 2.0 * kPi * kI * sr * (z + zc) * lam) * a *
                      theta_scaled(mu, sr * w * (kI * lam + 2.0 * sr * zc), tau);
    mass = std::exp(t1.log_abs()) + std::exp(t2.log_abs());
    return t1.value() + sgn * t2.value();
  };
  const double pre = (c == LimitClass::B) ? -p.rho : p.rho;
  return pre * refine_gl(f, -sr * w, sr * w, q, "strip_kernel");
}

cplx strip_shift_multiplier(LimitClass c, const StripParams& p, cplx z) {
  // B, C and D carry twice the flux of A
  const double flux = (c == LimitClass::A) ? 1.0 : 2.0;
  const double sgn = (c == LimitClass::B) ? -1.0 : 1.0;
  return sgn * std::exp(-2.0 * kPi * kI * flux * p.rho * p.width * z.real());
}

double strip_quasi_periodicity_residual(LimitClass c, const StripParams& p, cplx z, cplx zp) {
  const cplx k0 = strip_kernel(c, p, z, zp);
  const cplx shift(0.0, p.width);
  const cplx k1 = strip_kernel(c, p, z + shift, zp);
  const cplx k2 = strip_kernel(c, p, z, zp + shift);
  const cplx e1 = strip_shift_multiplier(c, p, z) * k0;
  const cplx e2 = std::conj(strip_shift_multiplier(c, p, zp)) * k0;
  const double scale = std::max({std::abs(k0), std::abs(k1), std::abs(k2), 1e-300});
  return std::max(std::abs(k1 - e1), std::abs(k2 - e2)) / scale;
}

cplx g_strip(LimitClass c, const StripParams& p, cplx z, double lambda) {
  p.validate();
  const double sr = std::sqrt(p.rho);
  const double w = p.width;
  const double y = z.imag();
  if (c == LimitClass::A) {
    const Scaled t = Scaled::from_exp(-kPi * (p.rho * y * y + lambda * lambda)) *
                     theta_letter_scaled(Letter::A, lambda / (sr * w), p.rho * w * z,
                                         ModularTau(cplx(0.0, p.rho * w * w)));
    return std::pow(2.0, 0.25) * sr * t.value();
  }
  const Scaled t = Scaled::from_exp(-kPi * (2.0 * p.rho * y * y + 0.5 * lambda * lambda)) *
                   theta_letter_scaled(letter_of(c), lambda / (2.0 * sr * w), 2.0 * p.rho * w * z,
                                       ModularTau(cplx(0.0, 2.0 * p.rho * w * w)));
  return sr * t.value();
}

cplx strip_reconstruction(LimitClass c, const StripParams& p, cplx z, cplx zp, const StripQuadrature& q) {
  auto f = [&](double lam, double& mass) {
    const cplx v = g_strip(c, p, z, lam) * std::conj(g_strip(c, p, zp, lam));
    mass = std::abs(v);
    return v;
  };
  return refine_gl(f, 0.0, p.lambda_max(), q, "strip_reconstruction");
}

cplx smeared_strip_inner_product(LimitClass c, const StripParams& p, double lambda, double lambda_p, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("smeared_strip_inner_product: window must be positive");
  const double sr = std::sqrt(p.rho);
  const double period = (c == LimitClass::A) ? 1.0 / (p.rho * p.width) : 1.0 / (2.0 * p.rho * p.width);
  const double freq = sr * (std::abs(lambda) + std::abs(lambda_p) + 1.0);
  const double h = std::min({period / 32.0, 1.0 / (16.0 * freq), window / 8.0});
  const int half = static_cast<int>(std::ceil(6.0 * window / h));
  const Nodes ny = rule_nodes(Rule::gauss_legendre, 0.0, p.width, 64);
  CompensatedSum s;
  for (int i = -half; i <= half; ++i) {
    const double x = i * h;
    const double win = std::exp(-(x / window) * (x / window));
    for (std::size_t j = 0; j < ny.x.size(); ++j) {
      const cplx z(x, ny.x[j]);
      s.add(h * ny.w[j] * win * std::conj(g_strip(c, p, z, lambda)) * g_strip(c, p, z, lambda_p));
    }
  }
  return s.value() / (std::sqrt(kPi) * window);
}

std::vector<TestPair> seeded_test_pairs(std::uint64_t seed, int count, std::pair<double, double> x_range,
                                        std::pair<double, double> y_range) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::pair<double, double> r) { return r.first + (r.second - r.first) * uniform01(rng); };
  std::vector<TestPair> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = draw(x_range), y = draw(y_range), xp = draw(x_range), yp = draw(y_range);
    out.push_back({cplx(x, y), cplx(xp, yp)});
  }
  return out;
}

double scan_length(const RootSystemSpec& spec, const StripParams& p, ScanScaling s) {
  if (s == ScanScaling::fixed_density || spec.letter() == Letter::A) return spec.n() / (p.rho * p.width);
  return script_n(spec) / (2.0 * p.rho * p.width);
}

double family_collapse_error(Family f, int n, const StripParams& p, std::span<const TestPair> pairs,
                             ScanScaling scaling) {
  const RootSystemSpec spec(f, n);
  const KernelContext ctx(spec, DomainGeometry(scan_length(spec, p, scaling), p.width));
  const LimitClass c = limit_class_of(f);
  double err = 0.0;
  for (const TestPair& t : pairs) {
    err = std::max(err, std::abs(std::abs(kernel_eval(ctx, t.z, t.zp)) - std::abs(strip_kernel(c, p, t.z, t.zp))));
  }
  return err;
}

std::vector<ScanPoint> finite_to_strip_scan(Family f, std::span<const int> ns, const StripParams& p,
                                            std::span<const TestPair> pairs, ScanScaling scaling) {
  std::vector<ScanPoint> out;
  for (int n : ns) out.push_back({static_cast<double>(n), family_collapse_error(f, n, p, pairs, scaling)});
  return out;
}

cplx ginibre_kernel(LimitClass c, double rho, cplx z, cplx zp) {
  if (!(rho > 0.0)) throw std::invalid_argument("ginibre_kernel: rho must be positive");
  const double nz = std::norm(z), nzp = std::norm(zp);
  const cplx u = z * std::conj(zp);
  switch (c) {
    case LimitClass::A: return rho * std::exp(-kPi * rho * (nz + nzp) / 2.0 + kPi * rho * u);
    case LimitClass::C: return 2.0 * rho * std::exp(-kPi * rho * (nz + nzp)) * std::sinh(2.0 * kPi * rho * u);
    case LimitClass::D: return 2.0 * rho * std::exp(-kPi * rho * (nz + nzp)) * std::cosh(2.0 * kPi * rho * u);
    case LimitClass::B: break;
  }
  throw std::invalid_argument("ginibre_kernel: class must be A, C or D");
}

double ginibre_density(LimitClass c, double rho, cplx z) {
  const double e = std::exp(-4.0 * kPi * rho * std::norm(z));
  switch (c) {
    case LimitClass::A: return rho;
    case LimitClass::C: return -rho * std::expm1(-4.0 * kPi * rho * std::norm(z));
    case LimitClass::D: return rho * (1.0 + e);
    case LimitClass::B: break;
  }
  throw std::invalid_argument("ginibre_density: class must be A, C or D");
}

LimitClass ginibre_target(LimitClass c) { return c == LimitClass::B ? LimitClass::C : c; }

std::vector<ScanPoint> strip_to_ginibre_scan(LimitClass c, double rho, std::span<const double> widths,
                                             std::span<const TestPair> pairs) {
  const LimitClass target = ginibre_target(c);
  std::vector<ScanPoint> out;
  for (double w : widths) {
    const StripParams p{rho, w};
    double err = 0.0;
    for (const TestPair& t : pairs) {
      err = std::max(err, std::abs(std::abs(strip_kernel(c, p, t.z, t.zp)) -
                                   std::abs(ginibre_kernel(target, rho, t.z, t.zp))));
    }
    out.push_back({w, err});
  }
  return out;
}

double strip_pair_discrepancy(LimitClass a, LimitClass b, const StripParams& p, std::span<const TestPair> pairs) {
  double err = 0.0;
  for (const TestPair& t : pairs) {
    err = std::max(err, std::abs(std::abs(strip_kernel(a, p, t.z, t.zp)) - std::abs(strip_kernel(b, p, t.z, t.zp))));
  }
  return err;
}

double mittag_leffler_density(IndexSet set, int k, double c, cplx z) {
  const bool ok = k == 1 && ((set == IndexSet::n0 && c == 0.0) || (set == IndexSet::even && c == 1.0) ||
                             (set == IndexSet::odd && c == -1.0));
  if (!ok) throw std::invalid_argument("mittag_leffler_density: supported cases are k=1 with (N0,0), (even,1), (odd,-1)");
  const int step = (set == IndexSet::n0) ? 1 : 2;
  const int first = (set == IndexSet::odd) ? 1 : 0;
  const double s = std::norm(z);
  // term_j = s^(j+c) / Gamma(j+1+c) * e^(-s)
  if (s == 0.0) {
    return (first + c == 0.0) ? 1.0 / std::tgamma(first + 1.0 + c) : 0.0;
  }
  int peak = std::max(first, static_cast<int>(std::floor(s - c)));
  peak -= (peak - first) % step;
  const double log_peak = (peak + c) * std::log(s) - std::lgamma(peak + 1.0 + c) - s;
  // ratios relative to the peak term, walking outward until they vanish
  double sum = 1.0;
  double t = 1.0;
  for (int j = peak; j - step >= first; j -= step) {
    for (int r = 0; r < step; ++r) t *= (j - r + c) / s;
    sum += t;
    if (t < 1e-18 * sum) break;
  }
  t = 1.0;
  for (int j = peak;; j += step) {
    for (int r = 1; r <= step; ++r) t *= s / (j + r + c);
    sum += t;
    if (t < 1e-18 * sum && j > s) break;
  }
  return std::exp(log_peak) * sum;
}

double ginibre_density_via_mittag_leffler(LimitClass c, double rho, cplx z) {
  const cplx w = std::sqrt(2.0 * kPi * rho) * z;
  switch (c) {
    case LimitClass::A: return rho * mittag_leffler_density(IndexSet::n0, 1, 0.0, w);
    case LimitClass::C: return 2.0 * rho * mittag_leffler_density(IndexSet::even, 1, 1.0, w);
    case LimitClass::D: return 2.0 * rho * mittag_leffler_density(IndexSet::odd, 1, -1.0, w);
    case LimitClass::B: break;
  }
  throw std::invalid_argument("ginibre_density_via_mittag_leffler: class must be A, C or D");
}

cplx g_plane(LimitClass c, double rho, cplx z, double lambda) {
  if (!(rho > 0.0)) throw std::invalid_argument("g_plane: rho must be positive");
  const double x = z.real();
  switch (c) {
    case LimitClass::A:
      return std::pow(2.0, 0.25) * std::pow(rho, 0.75) *
             std::exp(2.0 * kPi * rho * z * lambda - kPi * rho * (x * x + lambda * lambda));
    case LimitClass::C:
    case LimitClass::D: {
      if (!(lambda > 0.0)) throw std::invalid_argument("g_plane: lambda must be positive for C and D");
      const cplx a = 4.0 * kPi * rho * z * lambda;
      const double g = -2.0 * kPi * rho * (x * x + lambda * lambda);
      // sinh and cosh split into exponentials to keep the Gaussian inside each term
      const cplx ep = std::exp(a + g), em = std::exp(-a + g);
      const cplx h = (c == LimitClass::C) ? 0.5 * (ep - em) : 0.5 * (ep + em);
      return std::pow(2.0, 1.5) * std::pow(rho, 0.75) * h;
    }
    case LimitClass::B: break;
  }
  throw std::invalid_argument("g_plane: class must be A, C or D");
}

cplx plane_reconstruction(LimitClass c, double rho, cplx z, cplx zp, double cut, int nodes) {
  if (cut <= 0.0) cut = 6.0 / std::sqrt(rho);
  const double lo = (c == LimitClass::A) ? -cut : 0.0;
  const Nodes nd = rule_nodes(Rule::gauss_legendre, lo, cut, nodes);
  CompensatedSum s;
  for (std::size_t i = 0; i < nd.x.size(); ++i) {
    s.add(nd.w[i] * g_plane(c, rho, z, nd.x[i]) * std::conj(g_plane(c, rho, zp, nd.x[i])));
  }
  return s.value();
}

cplx smeared_plane_inner_product(LimitClass c, double rho, double lambda, double lambda_p, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("smeared_plane_inner_product: window must be positive");
  const double width = 8.0 / std::sqrt(rho);
  const double mid = 0.5 * (lambda + lambda_p);
  const Nodes nx = rule_nodes(Rule::gauss_legendre, -std::abs(mid) - width, std::abs(mid) + width, 200);
  const double freq = 2.0 * rho * (std::abs(lambda) + std::abs(lambda_p)) + 1.0;
  const double h = std::min(1.0 / (16.0 * freq), window / 8.0);
  const int half = static_cast<int>(std::ceil(6.0 * window / h));
  CompensatedSum s;
  for (int j = -half; j <= half; ++j) {
    const double y = j * h;
    const double win = std::exp(-(y / window) * (y / window));
    for (std::size_t i = 0; i < nx.x.size(); ++i) {
      const cplx z(nx.x[i], y);
      s.add(h * nx.w[i] * win * std::conj(g_plane(c, rho, z, lambda)) * g_plane(c, rho, z, lambda_p));
    }
  }
  return s.value() / (std::sqrt(kPi) * window);
}

bool is_monotone_nonincreasing(std::span<const ScanPoint> seq, double floor) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i].error > seq[i - 1].error + floor) return false;
  }
  return true;
}

}  // namespace edpp
