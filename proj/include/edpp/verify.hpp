#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edpp/dpp.hpp"

namespace edpp {

struct CaseResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool informational = false;  // reported, not counted toward the suite verdict
};

struct RunReport {
  std::string suite;
  std::vector<CaseResult> cases;
  std::uint64_t seed = 0;
  double wall_time = 0.0;

  bool pass() const;
  void add(const std::string& name, double residual, double tolerance);
  void add_flag(const std::string& name, bool ok, double residual = 0.0);
  void add_info(const std::string& name, double value);
  void append(const RunReport& other);
};

std::vector<std::string> suite_names();  // theta ... limits, then all
bool is_suite_name(const std::string& name);

// tol scales the default tolerances; 1.0 keeps them
RunReport run_suite(const std::string& name, std::uint64_t seed, double tol_scale = 1.0);

RunReport verify_theta(std::uint64_t seed, int cases = 1000, double tol_scale = 1.0);
RunReport verify_macdonald(std::uint64_t seed, int configs = 20, double tol_scale = 1.0);
RunReport verify_ortho(std::uint64_t seed, double tol_scale = 1.0);
RunReport verify_partition(std::uint64_t seed, double tol_scale = 1.0);
RunReport verify_dpp(std::uint64_t seed, int configs = 50, double tol_scale = 1.0);
RunReport verify_plasma(std::uint64_t seed, double tol_scale = 1.0);
RunReport verify_identities(std::uint64_t seed, double tol_scale = 1.0);
RunReport verify_limits(std::uint64_t seed, double tol_scale = 1.0);

// (1/N!) times the tensor trapezoid integral of Q over the N-fold domain; Q is doubly periodic
double partition_by_quadrature(const RootSystemSpec& spec, const DomainGeometry& geom, int nodes);

std::vector<Family> all_families();
int min_n(Family f);

}  // namespace edpp
