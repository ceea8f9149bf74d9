#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "edpp/dpp.hpp"

namespace edpp {

struct SamplerOptions {
  std::uint64_t seed = 1;
  int envelope_grid = 256;
  double envelope_safety = 1.5;
  long max_rejections = 1000000;

  void validate() const;
};

struct SamplerStats {
  long proposals = 0;
  long accepted = 0;
  double envelope = 0.0;
};

class Sampler {
 public:
  Sampler(const KernelContext& ctx, const SamplerOptions& opts);

  // one configuration, points in the order they were drawn
  Configuration sample();
  const SamplerStats& stats() const { return stats_; }

 private:
  double uniform();

  const KernelContext& ctx_;
  SamplerOptions opts_;
  std::mt19937_64 rng_;
  SamplerStats stats_;
};

// envelope-grid maximum of K(z,z) times the safety factor
double intensity_envelope(const KernelContext& ctx, const SamplerOptions& opts);

Configuration sample_configuration(const KernelContext& ctx, const SamplerOptions& opts);
std::vector<Configuration> sample_many(const KernelContext& ctx, const SamplerOptions& opts, int count);

struct Grid {
  int bx = 0;
  int by = 0;
  std::vector<double> values;  // row-major, x fastest

  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * bx + i]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * bx + i]; }
};

// raw point counts per bin
Grid bin_counts(const std::vector<Configuration>& samples, int bx, int by);

// histogram intensity, integrates to N over the domain
Grid estimate_one_point(const std::vector<Configuration>& samples, int bx, int by);

// expected counts per bin: samples * integral of K(z,z) over the bin
Grid expected_counts(const KernelContext& ctx, int samples, int bx, int by, int nodes_per_bin = 8);

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double critical = 0.0;
  double p_value = 1.0;
  bool pass = true;
};

// Pearson test at significance alpha; bins with expected < 5 are pooled.
ChiSquareReport chi_square_report(const Grid& empirical, const Grid& expected, double alpha = 0.001);

}  // namespace edpp
