#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "edpp/theta.hpp"

namespace edpp {

enum class Rule { periodic_trapezoid, gauss_legendre, midpoint };

struct QuadratureSpec {
  int nx = 256;
  int ny = 128;
  Rule rule_x = Rule::periodic_trapezoid;
  Rule rule_y = Rule::gauss_legendre;

  void validate() const;  // nx, ny >= 4
  QuadratureSpec doubled() const { return {2 * nx, 2 * ny, rule_x, rule_y}; }
};

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

Nodes rule_nodes(Rule rule, double a, double b, int n);

// Neumaier summation for complex terms, real and imaginary parts separately.
class CompensatedSum {
 public:
  void add(cplx v);
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

using Integrand1D = std::function<cplx(double)>;
using Integrand2D = std::function<cplx(double, double)>;

cplx integrate_interval(const Integrand1D& f, std::pair<double, double> range, int n, Rule rule);
cplx integrate_rect(const Integrand2D& f, std::pair<double, double> x_range, std::pair<double, double> y_range,
                    const QuadratureSpec& spec);

struct RefineResult {
  cplx value;
  double delta = 0.0;  // relative difference of the last two estimates
  bool converged = false;
  int doublings = 0;
};

// estimate(level) must use node counts multiplied by 2^level
RefineResult refine_until(const std::function<cplx(int)>& estimate, double tol, int max_doublings);

RefineResult refine_interval(const Integrand1D& f, std::pair<double, double> range, int n, Rule rule, double tol,
                             int max_doublings);
RefineResult refine_rect(const Integrand2D& f, std::pair<double, double> x_range, std::pair<double, double> y_range,
                         const QuadratureSpec& spec, double tol, int max_doublings);

}  // namespace edpp
