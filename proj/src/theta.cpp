#include "edpp/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace edpp {

namespace {

constexpr double kSeriesTol = 1e-18;
constexpr int kMaxTerms = 10000;
constexpr double kTransformThreshold = 0.5;
constexpr std::int64_t kMaxShift = 1000000;

const cplx kI(0.0, 1.0);

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void check_finite(cplx v) {
  if (!finite(v)) throw std::invalid_argument("theta: non-finite argument");
}

// theta(v + 1) = s1 * theta(v), theta(v + tau) = s2 * e^{-(2v+tau) pi i} theta(v)
int sign_one(ThetaIndex mu) { return (mu == ThetaIndex::one || mu == ThetaIndex::two) ? -1 : 1; }
int sign_tau(ThetaIndex mu) { return (mu == ThetaIndex::zero || mu == ThetaIndex::one) ? -1 : 1; }

}  // namespace

Scaled Scaled::from(cplx v) { return Scaled{0.0, v}.normalized(); }

Scaled Scaled::from_exp(cplx exponent) {
  return Scaled{exponent.real(), std::polar(1.0, exponent.imag())};
}

cplx Scaled::value() const {
  if (is_zero()) return {0.0, 0.0};
  return mantissa * std::exp(log_scale);
}

double Scaled::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(std::abs(mantissa));
}

Scaled Scaled::normalized() const {
  if (is_zero()) return {0.0, {0.0, 0.0}};
  const double a = std::abs(mantissa);
  if (!std::isfinite(a)) return *this;
  const double la = std::log(a);
  return {log_scale + la, mantissa / a};
}

Scaled operator*(const Scaled& a, const Scaled& b) {
  return Scaled{a.log_scale + b.log_scale, a.mantissa * b.mantissa}.normalized();
}

Scaled operator/(const Scaled& a, const Scaled& b) {
  if (b.is_zero()) throw std::domain_error("Scaled: division by zero");
  return Scaled{a.log_scale - b.log_scale, a.mantissa / b.mantissa}.normalized();
}

Scaled operator*(const Scaled& a, cplx c) { return a * Scaled::from(c); }

Scaled operator+(const Scaled& a, const Scaled& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double s = std::max(a.log_scale, b.log_scale);
  const cplx sum = a.mantissa * std::exp(a.log_scale - s) + b.mantissa * std::exp(b.log_scale - s);
  return Scaled{s, sum}.normalized();
}

Scaled operator-(const Scaled& a, const Scaled& b) { return a + Scaled{b.log_scale, -b.mantissa}; }

double relative_difference(const Scaled& a, const Scaled& b, double floor) {
  const double la = a.log_abs();
  const double lb = b.log_abs();
  const double lmax = std::max({la, lb, std::log(floor)});
  const Scaled d = a - b;
  if (d.is_zero()) return 0.0;
  return std::exp(d.log_abs() - lmax);
}

ModularTau::ModularTau(cplx value) : value_(value) {
  check_finite(value);
  if (!(value.imag() > 0.0)) throw std::invalid_argument("ModularTau: Im(tau) must be positive");
}

cplx ModularTau::nome() const { return std::exp(kI * kPi * value_); }

ThetaIndex theta_index(int mu) {
  if (mu < 0 || mu > 3) throw std::invalid_argument("theta index must be in 0..3");
  return static_cast<ThetaIndex>(mu);
}

cplx ReducedArgument::prefactor() const { return double(sign) * std::exp(prefactor_exponent); }

ReducedArgument reduce_argument(ThetaIndex mu, cplx v, const ModularTau& tau) {
  check_finite(v);
  const cplx t = tau.value();
  const double mr = std::nearbyint(v.imag() / t.imag());
  if (std::abs(mr) > double(kMaxShift)) throw std::overflow_error("reduce_argument: |m| exceeds 1e6");
  const auto m = static_cast<std::int64_t>(mr);
  const cplx v1 = v - mr * t;
  const double nr = std::nearbyint(v1.real());
  if (std::abs(nr) > 1e15) throw std::overflow_error("reduce_argument: |n| too large");
  const auto n = static_cast<std::int64_t>(nr);
  ReducedArgument r;
  r.v_reduced = v1 - nr;
  r.m = m;
  r.n = n;
  r.prefactor_exponent = -kI * kPi * (2.0 * mr * r.v_reduced + mr * mr * t);
  const int s2 = ((m % 2) != 0) ? sign_tau(mu) : 1;
  const int s1 = ((n % 2) != 0) ? sign_one(mu) : 1;
  r.sign = s1 * s2;
  return r;
}

int series_terms(ThetaIndex mu, cplx vr, const ModularTau& tau) {
  const double lq = -kPi * tau.imag();  // log|q|
  const double iv = std::abs(vr.imag());
  const double ltol = std::log(kSeriesTol);
  if (mu == ThetaIndex::one || mu == ThetaIndex::two) {
    // term n relative to term 1
    for (int n = 2; n <= kMaxTerms; ++n) {
      if (lq * n * (n - 1.0) + 2.0 * (n - 1.0) * kPi * iv < ltol) return n - 1;
    }
  } else {
    // term n relative to the constant term
    for (int n = 1; n <= kMaxTerms; ++n) {
      if (lq * double(n) * n + 2.0 * n * kPi * iv < ltol) return n - 1;
    }
  }
  return kMaxTerms;
}

namespace {

// Series at an already reduced argument.
Scaled series(ThetaIndex mu, cplx v, const ModularTau& tau) {
  const cplx t = tau.value();
  const int terms = series_terms(mu, v, tau);
  switch (mu) {
    case ThetaIndex::zero:
    case ThetaIndex::three: {
      const double alt = (mu == ThetaIndex::zero) ? -1.0 : 1.0;
      cplx sum(0.0, 0.0);
      for (int n = terms; n >= 1; --n) {
        const double sgn = (n % 2 == 1) ? alt : 1.0;
        sum += sgn * std::exp(kI * kPi * t * double(n) * double(n)) * std::cos(2.0 * kPi * double(n) * v);
      }
      return Scaled::from(1.0 + 2.0 * sum);
    }
    case ThetaIndex::one:
    case ThetaIndex::two: {
      cplx sum(0.0, 0.0);
      for (int n = terms; n >= 1; --n) {
        const cplx qn = std::exp(kI * kPi * t * double(n) * double(n - 1));
        const double k = 2.0 * n - 1.0;
        if (mu == ThetaIndex::one) {
          const double sgn = (n % 2 == 1) ? 1.0 : -1.0;
          sum += sgn * qn * std::sin(k * kPi * v);
        } else {
          sum += qn * std::cos(k * kPi * v);
        }
      }
      // 2 q^{1/4} factored out
      return Scaled::from_exp(kI * kPi * t / 4.0) * Scaled::from(2.0 * sum);
    }
  }
  return {};
}

ThetaIndex transformed_index(ThetaIndex mu) {
  switch (mu) {
    case ThetaIndex::zero: return ThetaIndex::two;
    case ThetaIndex::two: return ThetaIndex::zero;
    default: return mu;
  }
}

}  // namespace

Scaled theta_series_scaled(ThetaIndex mu, cplx v, const ModularTau& tau) {
  const ReducedArgument r = reduce_argument(mu, v, tau);
  Scaled s = series(mu, r.v_reduced, tau);
  Scaled pre = Scaled::from_exp(r.prefactor_exponent);
  pre.mantissa *= double(r.sign);
  return s * pre;
}

Scaled imaginary_transform_scaled(ThetaIndex mu, cplx v, const ModularTau& tau) {
  check_finite(v);
  const cplx t = tau.value();
  const ModularTau tt(-1.0 / t);
  const cplx c = (mu == ThetaIndex::one) ? std::exp(kI * (0.75 * kPi)) : std::exp(kI * (0.25 * kPi));
  const Scaled factor = Scaled::from(c * std::pow(t, -0.5)) * Scaled::from_exp(-kI * kPi * v * v / t);
  return factor * theta_series_scaled(transformed_index(mu), v / t, tt);
}

cplx imaginary_transform(ThetaIndex mu, cplx v, const ModularTau& tau) {
  return imaginary_transform_scaled(mu, v, tau).value();
}

Scaled theta_scaled(ThetaIndex mu, cplx v, const ModularTau& tau) {
  check_finite(v);
  const cplx t = tau.value();
  if (t.imag() < kTransformThreshold && (-1.0 / t).imag() > t.imag()) {
    // reduce first so that v^2/tau stays small in the transformed frame
    const ReducedArgument r = reduce_argument(mu, v, tau);
    Scaled pre = Scaled::from_exp(r.prefactor_exponent);
    pre.mantissa *= double(r.sign);
    return pre * imaginary_transform_scaled(mu, r.v_reduced, tau);
  }
  return theta_series_scaled(mu, v, tau);
}

cplx theta_eval(ThetaIndex mu, cplx v, const ModularTau& tau) { return theta_scaled(mu, v, tau).value(); }

double log_abs_theta(ThetaIndex mu, cplx v, const ModularTau& tau) {
  return theta_scaled(mu, v, tau).log_abs();
}

cplx theta1_product(cplx v, const ModularTau& tau) {
  check_finite(v);
  const cplx t = tau.value();
  const cplx c2 = std::cos(2.0 * kPi * v);
  cplx prod(1.0, 0.0);
  for (int j = 1; j <= 100000; ++j) {
    const cplx q2 = std::exp(kI * kPi * t * (2.0 * j));
    const cplx q4 = q2 * q2;
    const cplx f = (1.0 - 2.0 * q2 * c2 + q4) * (1.0 - q2);
    prod *= f;
    if (std::abs(f - 1.0) < 1e-16 && std::abs(q2) < 1e-16) break;
  }
  return 2.0 * std::exp(kI * kPi * t / 4.0) * std::sin(kPi * v) * prod;
}

cplx dedekind_eta(const ModularTau& tau) {
  const cplx t = tau.value();
  cplx prod(1.0, 0.0);
  for (int n = 1; n <= 1000000; ++n) {
    const cplx w = std::exp(kI * kPi * t * (2.0 * n));
    if (std::abs(w) < 1e-17) break;
    prod *= (1.0 - w);
  }
  return std::exp(kI * kPi * t / 12.0) * prod;
}

cplx log_dedekind_eta(const ModularTau& tau) {
  const cplx t = tau.value();
  cplx sum = kI * kPi * t / 12.0;
  for (int n = 1; n <= 1000000; ++n) {
    const cplx w = std::exp(kI * kPi * t * (2.0 * n));
    if (std::abs(w) < 1e-17) break;
    sum += std::log(1.0 - w);
  }
  return sum;
}

cplx theta1_prime_zero(const ModularTau& tau) {
  const cplx e = dedekind_eta(tau);
  return 2.0 * kPi * e * e * e;
}

}  // namespace edpp
