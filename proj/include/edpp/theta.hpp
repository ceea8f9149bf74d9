#pragma once

#include <complex>
#include <cstdint>

namespace edpp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// value = mantissa * exp(log_scale); keeps theta products representable when
// the raw magnitudes leave the double range.
struct Scaled {
  double log_scale = 0.0;
  cplx mantissa{0.0, 0.0};

  static Scaled from(cplx v);
  static Scaled from_exp(cplx exponent);  // exp(exponent)

  cplx value() const;
  double log_abs() const;  // -inf for an exact zero
  bool is_zero() const { return mantissa == cplx(0.0, 0.0); }
  Scaled conj() const { return {log_scale, std::conj(mantissa)}; }
  Scaled normalized() const;
};

Scaled operator*(const Scaled& a, const Scaled& b);
Scaled operator/(const Scaled& a, const Scaled& b);
Scaled operator+(const Scaled& a, const Scaled& b);
Scaled operator-(const Scaled& a, const Scaled& b);
Scaled operator*(const Scaled& a, cplx c);

// |a - b| / max(|a|, |b|, floor), evaluated without leaving log space.
double relative_difference(const Scaled& a, const Scaled& b, double floor = 1e-30);

class ModularTau {
 public:
  ModularTau(cplx value);  // NOLINT: validated implicit conversion
  ModularTau(double re, double im) : ModularTau(cplx(re, im)) {}
  cplx value() const { return value_; }
  double imag() const { return value_.imag(); }
  cplx nome() const;  // e^{i pi tau}

 private:
  cplx value_;
};

enum class ThetaIndex : int { zero = 0, one = 1, two = 2, three = 3 };

ThetaIndex theta_index(int mu);  // throws std::invalid_argument outside 0..3

struct ReducedArgument {
  cplx v_reduced;
  cplx prefactor_exponent;  // prefactor = sign * exp(prefactor_exponent)
  int sign = 1;
  std::int64_t m = 0;  // multiples of tau removed
  std::int64_t n = 0;  // multiples of 1 removed

  cplx prefactor() const;
};

ReducedArgument reduce_argument(ThetaIndex mu, cplx v, const ModularTau& tau);

// Number of series terms used for a reduced argument; exposed for tests.
int series_terms(ThetaIndex mu, cplx v_reduced, const ModularTau& tau);

Scaled theta_scaled(ThetaIndex mu, cplx v, const ModularTau& tau);
cplx theta_eval(ThetaIndex mu, cplx v, const ModularTau& tau);
double log_abs_theta(ThetaIndex mu, cplx v, const ModularTau& tau);

// Argument reduction plus direct series, never the imaginary transform.
Scaled theta_series_scaled(ThetaIndex mu, cplx v, const ModularTau& tau);

// Evaluation through tau -> -1/tau, whatever the size of Im(tau).
Scaled imaginary_transform_scaled(ThetaIndex mu, cplx v, const ModularTau& tau);
cplx imaginary_transform(ThetaIndex mu, cplx v, const ModularTau& tau);

cplx theta1_product(cplx v, const ModularTau& tau);

cplx dedekind_eta(const ModularTau& tau);
cplx log_dedekind_eta(const ModularTau& tau);

cplx theta1_prime_zero(const ModularTau& tau);

inline cplx theta0(cplx v, const ModularTau& t) { return theta_eval(ThetaIndex::zero, v, t); }
inline cplx theta1(cplx v, const ModularTau& t) { return theta_eval(ThetaIndex::one, v, t); }
inline cplx theta2(cplx v, const ModularTau& t) { return theta_eval(ThetaIndex::two, v, t); }
inline cplx theta3(cplx v, const ModularTau& t) { return theta_eval(ThetaIndex::three, v, t); }

}  // namespace edpp
