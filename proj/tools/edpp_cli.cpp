#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edpp/limits.hpp"
#include "edpp/plasma.hpp"
#include "edpp/sampler.hpp"
#include "edpp/verify.hpp"

using nlohmann::json;

namespace {

// exit codes: 0 pass, 1 failure or I/O error, 2 usage error
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann prints shortest round-trip doubles; 17 digits is requested explicitly
std::string dump_with_17_digits(const json& j) {
  std::ostringstream out;
  const std::function<void(const json&)> emit = [&](const json& v) {
    if (v.is_number_float()) {
      out << fmt17(v.get<double>());
    } else if (v.is_array()) {
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        emit(v[i]);
      }
      out << ']';
    } else if (v.is_object()) {
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        out << json(it.key()).dump() << ':';
        emit(it.value());
      }
      out << '}';
    } else {
      out << v.dump();
    }
  };
  emit(j);
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

edpp::Family family_arg(const std::string& s) {
  try {
    return edpp::parse_family(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

template <class T, class F>
T usage_guard(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json report_json(const edpp::RunReport& r, bool with_time) {
  json cases = json::array();
  for (const edpp::CaseResult& c : r.cases) {
    json e = {{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (c.informational) e["informational"] = true;
    cases.push_back(e);
  }
  json j = {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"cases", cases}};
  if (with_time) j["wall_time"] = r.wall_time;
  return j;
}

int cmd_verify(const std::string& suite, double tol, std::uint64_t seed, bool no_time, const std::string& out) {
  if (!edpp::is_suite_name(suite)) throw UsageError("unknown suite '" + suite + "'");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  const edpp::RunReport r = edpp::run_suite(suite, seed, tol);
  for (const edpp::CaseResult& c : r.cases) {
    std::cerr << (c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL")) << "  " << c.name << "  "
              << fmt17(c.residual);
    if (!c.informational) std::cerr << " (tol " << c.tolerance << ")";
    std::cerr << '\n';
  }
  emit(out, dump_with_17_digits(report_json(r, !no_time)) + "\n");
  return r.pass() ? 0 : 1;
}

int cmd_sample(const std::string& fam, int n, double length, double width, int count, std::uint64_t seed,
               const std::string& out) {
  const edpp::Family f = family_arg(fam);
  if (count < 1) throw UsageError("--count must be at least 1");
  const edpp::RootSystemSpec spec = usage_guard<edpp::RootSystemSpec>([&] { return edpp::RootSystemSpec(f, n); });
  const edpp::DomainGeometry geom =
      usage_guard<edpp::DomainGeometry>([&] { return edpp::DomainGeometry(length, width); });
  const edpp::KernelContext ctx(spec, geom);
  edpp::SamplerOptions opts;
  opts.seed = seed;
  json configs = json::array();
  for (const edpp::Configuration& c : edpp::sample_many(ctx, opts, count)) {
    json pts = json::array();
    for (edpp::cplx z : c.points) pts.push_back({z.real(), z.imag()});
    configs.push_back(pts);
  }
  const json j = {{"family", edpp::family_name(f)}, {"n", n},       {"length", length},
                  {"width", width},                 {"seed", seed}, {"configurations", configs}};
  emit(out, dump_with_17_digits(j) + "\n");
  return 0;
}

std::string heat_svg(const std::vector<double>& v, int g, double length, double width) {
  const double scale = 400.0 / std::max(length, width);
  double hi = 0.0;
  for (double x : v) hi = std::max(hi, x);
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << length * scale << "\" height=\"" << width * scale
    << "\">\n";
  const double cw = length * scale / g, ch = width * scale / g;
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < g; ++i) {
      const int level = hi > 0.0 ? static_cast<int>(std::lround(255.0 * v[j * g + i] / hi)) : 0;
      // y grows upward in the domain, downward in SVG
      s << "<rect x=\"" << i * cw << "\" y=\"" << (g - 1 - j) * ch << "\" width=\"" << cw << "\" height=\"" << ch
        << "\" fill=\"rgb(" << level << ",0," << 255 - level << ")\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

int cmd_kernel(const std::string& fam, int n, double length, double width, int grid, const std::string& out,
               const std::string& plot) {
  const edpp::Family f = family_arg(fam);
  if (grid < 2) throw UsageError("--grid must be at least 2");
  const edpp::RootSystemSpec spec = usage_guard<edpp::RootSystemSpec>([&] { return edpp::RootSystemSpec(f, n); });
  const edpp::DomainGeometry geom =
      usage_guard<edpp::DomainGeometry>([&] { return edpp::DomainGeometry(length, width); });
  const edpp::KernelContext ctx(spec, geom);
  std::vector<double> v(static_cast<std::size_t>(grid) * grid);
  std::ostringstream csv;
  csv << "x,y,value\n";
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      const edpp::cplx z(length * i / grid, width * j / grid);
      v[j * grid + i] = edpp::kernel_eval(ctx, z, z).real();
      csv << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(v[j * grid + i]) << '\n';
    }
  }
  emit(out, csv.str());
  if (!plot.empty()) write_file(plot, heat_svg(v, grid, length, width));
  return 0;
}

int cmd_plasma(const std::string& fam, int n, double length, double width) {
  const edpp::Family f = family_arg(fam);
  if (f != edpp::Family::A && f != edpp::Family::C && f != edpp::Family::D)
    throw UsageError("plasma supports families A, C and D");
  usage_guard<int>([&] {
    edpp::RootSystemSpec(f, n);
    return 0;
  });
  const edpp::DomainGeometry geom =
      usage_guard<edpp::DomainGeometry>([&] { return edpp::DomainGeometry(length, width); });
  const edpp::FreeEnergy fe = edpp::free_energy_expansion(f, geom, n);
  const edpp::GffReport g = edpp::gff_comparison(geom, n / geom.area());
  const edpp::PlasmaSpec preset = edpp::solvable_preset(f, n, geom);
  json j = {
      {"family", edpp::family_name(f)},
      {"n", n},
      {"length", length},
      {"width", width},
      {"n_background", preset.n_background},
      {"beta", preset.beta},
      {"log_c", edpp::log_proportionality_constant(f, geom, n)},
      {"log_z_plasma", edpp::log_plasma_partition(f, geom, n)},
      {"f_exact", fe.exact},
      {"f0", fe.f0},
      {"f1", fe.f1},
      {"log_term", fe.log_term},
      {"expansion_residual", fe.residual},
      {"gff",
       {{"f_gff_nonzero", g.f_gff_nonzero},
        {"f_gff", g.f_gff},
        {"f1_a", g.f1_a},
        {"f1_c_minus_gff", g.f1_c_minus_gff},
        {"f1_d_minus_gff", g.f1_d_minus_gff},
        {"modular_residual", g.modular_residual}}},
  };
  std::cout << dump_with_17_digits(j) << "\n";
  return 0;
}

int cmd_limits(const std::string& cls, double rho, double width, const std::string& mode, std::uint64_t seed,
               int grid, const std::string& out) {
  const edpp::LimitClass c = usage_guard<edpp::LimitClass>([&] { return edpp::parse_limit_class(cls); });
  const edpp::StripParams p{rho, width};
  usage_guard<int>([&] {
    p.validate();
    return 0;
  });
  std::ostringstream csv;
  if (mode == "kernel") {
    // x over [0, 1/(rho W)), y over the full strip width centred on the real axis
    csv << "x,y,value\n";
    const double period = 1.0 / (rho * width);
    for (int j = 0; j < grid; ++j) {
      for (int i = 0; i < grid; ++i) {
        const edpp::cplx z(period * i / grid, width * (double(j) / grid - 0.5));
        csv << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(edpp::strip_kernel(c, p, z, z).real())
            << '\n';
      }
    }
  } else if (mode == "scan_n") {
    const std::vector<edpp::TestPair> pairs = edpp::seeded_test_pairs(seed, 16, {-0.5, 0.5}, {-0.5, 0.5});
    csv << "family,n,error\n";
    const int ns[] = {8, 16, 32, 64};
    for (edpp::Family f : edpp::all_families()) {
      if (edpp::limit_class_of(f) != c) continue;
      for (const edpp::ScanPoint& s : edpp::finite_to_strip_scan(f, ns, p, pairs))
        csv << edpp::family_name(f) << ',' << s.parameter << ',' << fmt17(s.error) << '\n';
    }
  } else if (mode == "scan_w") {
    const std::vector<edpp::TestPair> pairs = edpp::seeded_test_pairs(seed, 16, {-0.5, 0.5}, {-0.5, 0.5});
    const double ws[] = {1.0, 2.0, 3.0, 4.0};
    const std::vector<edpp::ScanPoint> s = edpp::strip_to_ginibre_scan(c, rho, ws, pairs);
    const bool bc = c == edpp::LimitClass::B || c == edpp::LimitClass::C;
    csv << "width,ginibre_error" << (bc ? ",b_vs_c" : "") << '\n';
    for (const edpp::ScanPoint& sp : s) {
      csv << sp.parameter << ',' << fmt17(sp.error);
      if (bc)
        csv << ',' << fmt17(edpp::strip_pair_discrepancy(edpp::LimitClass::B, edpp::LimitClass::C,
                                                         {rho, sp.parameter}, pairs));
      csv << '\n';
    }
  } else {
    throw UsageError("unknown mode '" + mode + "'");
  }
  emit(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic determinantal point processes: verification, sampling, kernels, plasma, limits"};
  app.require_subcommand(1);

  std::string suite = "all", out, plot, family = "A", cls = "A", mode = "kernel";
  double tol = 1.0, length = 1.0, width = 1.0, rho = 1.0;
  std::uint64_t seed = 1;
  int n = 1, count = 1, grid = 64;
  bool no_time = false;

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "theta, macdonald, ortho, partition, dpp, plasma, identities, limits or all");
  verify->add_option("--tol", tol, "multiplier on the default tolerances");
  verify->add_option("--seed", seed);
  verify->add_option("--out", out, "JSON report path, stdout if omitted");
  verify->add_flag("--no-time", no_time, "omit wall_time so reports compare byte for byte");

  auto* sample = app.add_subcommand("sample", "draw configurations");
  sample->add_option("--family", family)->required();
  sample->add_option("--n", n)->required();
  sample->add_option("--length", length);
  sample->add_option("--width", width);
  sample->add_option("--count", count);
  sample->add_option("--seed", seed);
  sample->add_option("--out", out);

  auto* kernel = app.add_subcommand("kernel", "grid of K(z,z)");
  kernel->add_option("--family", family)->required();
  kernel->add_option("--n", n)->required();
  kernel->add_option("--length", length);
  kernel->add_option("--width", width);
  kernel->add_option("--grid", grid);
  kernel->add_option("--out", out);
  kernel->add_option("--plot", plot, "SVG heat map path");

  auto* plasma = app.add_subcommand("plasma", "exact plasma partition function and free energy");
  plasma->add_option("--family", family)->required();
  plasma->add_option("--n", n)->required();
  plasma->add_option("--length", length);
  plasma->add_option("--width", width);

  auto* limits = app.add_subcommand("limits", "strip kernels and convergence scans");
  limits->add_option("--class", cls)->required();
  limits->add_option("--rho", rho);
  limits->add_option("--width", width);
  limits->add_option("--mode", mode, "kernel, scan_n or scan_w");
  limits->add_option("--seed", seed);
  limits->add_option("--grid", grid);
  limits->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(suite, tol, seed, no_time, out);
    if (*sample) return cmd_sample(family, n, length, width, count, seed, out);
    if (*kernel) return cmd_kernel(family, n, length, width, grid, out, plot);
    if (*plasma) return cmd_plasma(family, n, length, width);
    if (*limits) return cmd_limits(cls, rho, width, mode, seed, grid, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
