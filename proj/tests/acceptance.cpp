// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "edpp/sampler.hpp"
#include "edpp/verify.hpp"

using namespace edpp;

namespace {

struct Selection {
  bool pass = true;
  int cases = 0;
  double worst_ratio = 0.0;  // residual / tolerance over toleranced cases
  std::string first_failure;
};

Selection select(const RunReport& r, const std::function<bool(const std::string&)>& keep) {
  Selection s;
  for (const CaseResult& c : r.cases) {
    if (c.informational || !keep(c.name)) continue;
    ++s.cases;
    if (c.tolerance > 0.0) s.worst_ratio = std::max(s.worst_ratio, c.residual / c.tolerance);
    if (!c.pass) {
      if (s.pass) s.first_failure = c.name + " = " + std::to_string(c.residual);
      s.pass = false;
    }
  }
  return s;
}

bool contains(const std::string& s, const char* part) { return s.find(part) != std::string::npos; }

int failures = 0;

void line(const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
}

void report(const std::string& name, const Selection& s, double seconds, double limit) {
  char buf[256];
  const bool in_time = limit <= 0.0 || seconds < limit;
  if (limit > 0.0) {
    std::snprintf(buf, sizeof buf, "%d cases, worst residual/tol %.3g, %.2f s (limit %.0f s)", s.cases, s.worst_ratio,
                  seconds, limit);
  } else {
    std::snprintf(buf, sizeof buf, "%d cases, worst residual/tol %.3g, %.2f s", s.cases, s.worst_ratio, seconds);
  }
  std::string detail = buf;
  if (!s.pass) detail += "; first failure: " + s.first_failure;
  if (!in_time) detail += "; over time limit";
  line(name, s.pass && s.cases > 0 && in_time, detail);
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  auto all = [](const std::string&) { return true; };

  const RunReport theta = verify_theta(seed);
  report("theta", select(theta, all), theta.wall_time, 10.0);

  const RunReport mac = verify_macdonald(seed);
  report("macdonald", select(mac, all), mac.wall_time, 30.0);

  const RunReport ortho = verify_ortho(seed);
  report("orthogonality", select(ortho, all), ortho.wall_time, 120.0);

  const RunReport part = verify_partition(seed);
  report("partition functions", select(part, all), part.wall_time, 300.0);

  const RunReport dpp = verify_dpp(seed);
  report("dpp consistency", select(dpp, all), dpp.wall_time, 0.0);

  {
    const auto t0 = std::chrono::steady_clock::now();
    const int samples = 10000, bx = 8, by = 8;
    const DomainGeometry g(2.0, 2.0);
    const KernelContext a(RootSystemSpec(Family::A, 4), g);
    const std::vector<Configuration> sa = sample_many(a, SamplerOptions{}, samples);
    const ChiSquareReport truth = chi_square_report(bin_counts(sa, bx, by), expected_counts(a, samples, bx, by));
    const KernelContext c(RootSystemSpec(Family::C, 4), g);
    const std::vector<Configuration> sc = sample_many(c, SamplerOptions{}, samples);
    Grid uniform{bx, by, std::vector<double>(bx * by, 4.0 * samples / (bx * by))};
    const ChiSquareReport control = chi_square_report(bin_counts(sc, bx, by), uniform);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[256];
    std::snprintf(buf, sizeof buf, "A N=4: chi2 %.1f < %.1f (dof %d, p %.3g); C vs uniform: chi2 %.1f %s %.1f; %.1f s",
                  truth.statistic, truth.critical, truth.dof, truth.p_value, control.statistic,
                  control.pass ? "<" : ">=", control.critical, secs);
    line("sampler", truth.pass && !control.pass && secs < 600.0, buf);
  }

  const RunReport plasma = verify_plasma(seed);
  report("plasma solvability",
         select(plasma, [](const std::string& n) { return !contains(n, "Re I") && !contains(n, "V closed form"); }),
         plasma.wall_time, 0.0);
  report("background integrals", select(plasma, [](const std::string& n) { return contains(n, "Re I"); }),
         plasma.wall_time, 0.0);

  const RunReport ids = verify_identities(seed);
  report("theta product identity", select(ids, [](const std::string& n) { return contains(n, "theta identity"); }),
         ids.wall_time, 0.0);

  const RunReport lim = verify_limits(seed);
  report("limits", select(lim, all), lim.wall_time, 0.0);

  report("gff", select(ids, [](const std::string& n) { return !contains(n, "theta identity"); }), ids.wall_time, 0.0);

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
