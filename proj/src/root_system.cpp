#include "edpp/root_system.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edpp {

namespace {

const cplx kI(0.0, 1.0);

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Scaled th(ThetaIndex mu, cplx v, const ModularTau& t) { return theta_scaled(mu, v, t); }

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::Bv: return "Bv";
    case Family::C: return "C";
    case Family::Cv: return "Cv";
    case Family::BC: return "BC";
    case Family::D: return "D";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::A, Family::B, Family::Bv, Family::C, Family::Cv, Family::BC, Family::D}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown family: " + name);
}

Letter letter_of(Family f) {
  switch (f) {
    case Family::A: return Letter::A;
    case Family::B:
    case Family::Bv: return Letter::B;
    case Family::C:
    case Family::Cv:
    case Family::BC: return Letter::C;
    case Family::D: return Letter::D;
  }
  return Letter::A;
}

RootSystemSpec::RootSystemSpec(Family family, int n_particles) : family_(family), n_(n_particles) {
  if (n_particles < 1) throw std::invalid_argument("RootSystemSpec: N must be at least 1");
  if (family == Family::D && n_particles < 2) throw std::invalid_argument("RootSystemSpec: family D requires N >= 2");
}

DomainGeometry::DomainGeometry(double length_l, double width_w) : l_(length_l), w_(width_w) {
  if (!(length_l > 0.0) || !(width_w > 0.0) || !std::isfinite(length_l) || !std::isfinite(width_w)) {
    throw std::invalid_argument("DomainGeometry: L and W must be positive and finite");
  }
}

cplx DomainGeometry::wrap(cplx z) const {
  double x = std::fmod(z.real(), l_);
  if (x < 0.0) x += l_;
  if (x >= l_) x -= l_;
  double y = std::fmod(z.imag(), w_);
  if (y < 0.0) y += w_;
  if (y >= w_) y -= w_;
  return {x, y};
}

int script_n(const RootSystemSpec& spec) {
  const int n = spec.n();
  switch (spec.family()) {
    case Family::A: return n;
    case Family::B: return 2 * n - 1;
    case Family::Bv:
    case Family::Cv: return 2 * n;
    case Family::C: return 2 * (n + 1);
    case Family::BC: return 2 * n + 1;
    case Family::D: return 2 * (n - 1);
  }
  return n;
}

double offset_j(const RootSystemSpec& spec, int j) {
  if (j < 1 || j > spec.n()) throw std::out_of_range("offset_j: j out of range");
  switch (spec.family()) {
    case Family::A:
    case Family::Cv: return j - 0.5;
    case Family::B:
    case Family::Bv:
    case Family::D: return j - 1.0;
    case Family::C:
    case Family::BC: return double(j);
  }
  return 0.0;
}

Scaled theta_letter_scaled(Letter letter, double sigma, cplx z, const ModularTau& tau) {
  const cplx t = tau.value();
  const Scaled ep = Scaled::from_exp(2.0 * kPi * kI * sigma * z);
  if (letter == Letter::A) return ep * th(ThetaIndex::two, sigma * t + z, tau);
  const Scaled em = Scaled::from_exp(-2.0 * kPi * kI * sigma * z);
  const ThetaIndex mu = (letter == Letter::B) ? ThetaIndex::one : ThetaIndex::two;
  const Scaled a = ep * th(mu, sigma * t + z, tau);
  const Scaled b = em * th(mu, sigma * t - z, tau);
  return (letter == Letter::D) ? a + b : a - b;
}

cplx theta_letter(Letter letter, double sigma, cplx z, const ModularTau& tau) {
  return theta_letter_scaled(letter, sigma, z, tau).value();
}

Scaled m_function_scaled(const RootSystemSpec& spec, const DomainGeometry& geom, int j, cplx z) {
  const double nn = script_n(spec);
  const double jj = offset_j(spec, j);
  const ModularTau t(nn * geom.tau().value());
  return theta_letter_scaled(spec.letter(), jj / nn, nn * z / geom.length(), t);
}

cplx m_function(const RootSystemSpec& spec, const DomainGeometry& geom, int j, cplx z) {
  return m_function_scaled(spec, geom, j, z).value();
}

Scaled macdonald_denominator_scaled(const RootSystemSpec& spec, std::span<const cplx> xi, const ModularTau& tau) {
  const int n = spec.n();
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("macdonald_denominator: length mismatch");
  const cplx t = tau.value();
  Scaled w = Scaled::from(1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      w = w * th(ThetaIndex::one, xi[k] - xi[j], tau);
      if (spec.family() != Family::A) w = w * th(ThetaIndex::one, xi[k] + xi[j], tau);
    }
  }
  for (int j = 0; j < n; ++j) {
    const cplx x = xi[j];
    switch (spec.family()) {
      case Family::A:
      case Family::D: break;
      case Family::B: w = w * th(ThetaIndex::one, x, tau); break;
      case Family::Bv: w = w * th(ThetaIndex::one, 2.0 * x, ModularTau(2.0 * t)); break;
      case Family::C: w = w * th(ThetaIndex::one, 2.0 * x, tau); break;
      case Family::Cv: w = w * th(ThetaIndex::one, x, ModularTau(t / 2.0)); break;
      case Family::BC:
        w = w * th(ThetaIndex::one, x, tau) * th(ThetaIndex::zero, 2.0 * x, ModularTau(2.0 * t));
        break;
    }
  }
  return w;
}

cplx macdonald_denominator(const RootSystemSpec& spec, std::span<const cplx> xi, const ModularTau& tau) {
  return macdonald_denominator_scaled(spec, xi, tau).value();
}

Scaled prefactor_a_scaled(const RootSystemSpec& spec, const ModularTau& tau) {
  const double n = spec.n();
  const cplx t = tau.value();
  const cplx le = log_dedekind_eta(tau);
  const cplx pit = kPi * kI * t;
  cplx lg;
  switch (spec.family()) {
    case Family::A:
      lg = -(2 * n - 1) * (2 * n + 1) * pit / 12.0 - (n - 1) * (n - 2) / 2.0 * le;
      break;
    case Family::B:
      lg = std::log(2.0) - n * (n - 1) * pit / 6.0 - n * (n - 1) * le;
      break;
    case Family::Bv:
      lg = std::log(2.0) - (n - 1) * (2 * n - 1) * pit / 12.0 - (n - 1) * (n - 1) * le -
           (n - 1) * log_dedekind_eta(ModularTau(2.0 * t));
      break;
    case Family::C:
      lg = -n * (2 * n + 1) * pit / 12.0 - n * (n - 1) * le;
      break;
    case Family::Cv:
      lg = -(2 * n - 1) * (2 * n + 1) * pit / 24.0 - (n - 1) * (n - 1) * le -
           (n - 1) * log_dedekind_eta(ModularTau(t / 2.0));
      break;
    case Family::BC:
      lg = -n * (n + 1) * pit / 6.0 - n * (n - 1) * le - n * log_dedekind_eta(ModularTau(2.0 * t));
      break;
    case Family::D:
      lg = std::log(4.0) - n * (2 * n - 1) * pit / 12.0 - n * (n - 2) * le;
      break;
  }
  return Scaled::from_exp(lg);
}

cplx prefactor_a(const RootSystemSpec& spec, const ModularTau& tau) { return prefactor_a_scaled(spec, tau).value(); }

Scaled scaled_determinant(const std::vector<std::vector<Scaled>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) return Scaled::from(1.0);
  Eigen::MatrixXcd m(n, n);
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) throw std::invalid_argument("scaled_determinant: not square");
    double s = -std::numeric_limits<double>::infinity();
    for (const Scaled& e : rows[r]) {
      if (!e.is_zero()) s = std::max(s, e.log_scale);
    }
    if (!std::isfinite(s)) return Scaled{};
    total += s;
    for (int c = 0; c < n; ++c) {
      const Scaled& e = rows[r][c];
      m(r, c) = e.is_zero() ? cplx(0.0, 0.0) : e.mantissa * std::exp(e.log_scale - s);
    }
  }
  const cplx d = m.partialPivLu().determinant();
  return Scaled{total, d}.normalized();
}

Scaled macdonald_lhs(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  const int n = spec.n();
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("macdonald_lhs: length mismatch");
  std::vector<std::vector<Scaled>> rows(n, std::vector<Scaled>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) rows[j][k] = m_function_scaled(spec, geom, j + 1, z[k]);
  }
  return scaled_determinant(rows);
}

Scaled macdonald_rhs(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  const int n = spec.n();
  const ModularTau tau = geom.tau();
  std::vector<cplx> xi(z.begin(), z.end());
  cplx sum(0.0, 0.0);
  for (cplx& x : xi) {
    x /= geom.length();
    sum += x;
  }
  Scaled rhs = prefactor_a_scaled(spec, tau) * macdonald_denominator_scaled(spec, xi, tau);
  switch (spec.family()) {
    case Family::A:
      if (n % 2 == 0) {
        rhs = rhs * th(ThetaIndex::zero, sum, tau) * i_power(n / 2);
      } else {
        rhs = rhs * th(ThetaIndex::three, sum, tau) * i_power(-(n - 1) / 2);
      }
      break;
    case Family::C:
    case Family::Cv:
    case Family::BC: rhs = rhs * i_power(-n); break;
    default: break;
  }
  return rhs;
}

double macdonald_identity_residual(const RootSystemSpec& spec, const DomainGeometry& geom, std::span<const cplx> z) {
  return relative_difference(macdonald_lhs(spec, geom, z), macdonald_rhs(spec, geom, z), 1e-30);
}

}  // namespace edpp
