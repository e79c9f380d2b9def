#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "lkc/field_io.hpp"
#include "lkc/kernel_cache.hpp"

namespace lkc::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void write_solve_artifacts(const RunConfig& config, const SolveReport& report, const fs::path& run_dir) {
  save_field(run_dir / "solution.field", report.solution, config.output.field_format == FieldFormat::binary);
  auto rep = open_out(run_dir / "report.txt");
  write_report(rep, report);
  auto hist = open_out(run_dir / "history.csv");
  write_history_csv(hist, report);
}

SolveConfig solver_config(const RunConfig& config) {
  SolveConfig sc = config.solver;
  if (!config.initial_file.empty()) sc.initial_field = load_field(config.initial_file);
  return sc;
}

// Solve and write artifacts. A line search breakdown still leaves a report.
SolveReport solve_and_write(const RunConfig& config, const ProblemSpec& spec, const GreenKernel& kernel,
                            const fs::path& run_dir, std::ostream& out) {
  SolveReport report;
  try {
    report = solve_ground_state(spec, kernel, solver_config(config));
  } catch (const std::runtime_error& e) {
    report.solution = Field(spec.box);
    report.status = std::string("solver error: ") + e.what();
    report.converged = false;
  }
  write_solve_artifacts(config, report, run_dir);
  out << std::setprecision(15) << "energy     = " << report.energy << '\n'
      << std::setprecision(6) << "residual   = " << report.residual << '\n'
      << "nehari     = " << report.nehari_defect << '\n'
      << "iterations = " << report.iterations << '\n'
      << "status     = " << report.status << (report.ok() ? "" : "  [FLAGGED]") << '\n';
  for (const auto& c : report.invariants) {
    if (!c.pass) out << "invariant " << c.name << " failed: " << c.detail << '\n';
  }
  return report;
}

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y%m%dT%H%M%SZ");
  return s.str();
}

}  // namespace

fs::path make_run_dir(const fs::path& root) {
  const fs::path base = root / "run" / utc_stamp();
  fs::path dir = base;
  for (int k = 1; fs::exists(dir); ++k) dir = base.string() + "-" + std::to_string(k);
  fs::create_directories(dir);
  return dir;
}

GreenKernel obtain_kernel(const RunConfig& config, double alpha, int table_radius, bool* was_cached) {
  const KernelCache cache(config.kernel.cache_dir);
  const KernelKey key{alpha, table_radius, config.kernel.method, config.kernel.resolution};
  return cache.get_or_build(key, config.threads, was_cached, config.kernel.tolerance);
}

int cmd_green(const RunConfig& config, const fs::path& run_dir, std::ostream& out) {
  const double alpha = config.problem.alpha;
  const int m = resolved_table_radius(config.kernel, config.problem.box);
  bool cached = false;
  const GreenKernel kernel = obtain_kernel(config, alpha, m, &cached);

  auto csv = open_out(run_dir / "kernel.csv");
  csv << "z1,z2,z3,R_alpha\n";
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; b <= m; ++b) {
      for (int c = 0; c <= m; ++c) csv << a << ',' << b << ',' << c << ',' << kernel({a, b, c}) << '\n';
    }
  }

  const KernelCache cache(config.kernel.cache_dir);
  const KernelKey key{alpha, m, config.kernel.method, config.kernel.resolution};
  out << std::setprecision(15) << "alpha        = " << alpha << '\n'
      << "K_alpha      = " << kernel.K_alpha() << '\n'
      << "table_radius = " << m << '\n'
      << "method       = " << to_string(config.kernel.method) << " (resolution " << config.kernel.resolution << ")\n"
      << "R_alpha(0)   = " << kernel({0, 0, 0}) << '\n';
  // Far-field window [10, 30] when the table reaches it, else its outer two thirds.
  const int zmax = std::min(30, m);
  const int zmin = m >= 12 ? std::min(10, std::max(1, m / 3)) : std::max(1, m / 3);
  if (zmax > zmin + 1) {
    double prefactor = 0.0;
    const double slope = fit_decay_slope(kernel, zmin, zmax, &prefactor);
    out << std::setprecision(6) << "decay_slope  = " << slope << "  on |z| in [" << zmin << ", " << zmax
        << "], far-field law " << alpha - 3.0 << '\n'
        << "prefactor    = " << prefactor << "  (fitted, not asserted)\n";
  }
  out << "cache        = " << (cached ? "cached" : "built") << ' ' << cache.path_for(key).string() << '\n'
      << "content_hash = " << kernel_content_hash(kernel) << '\n'
      << "octant_csv   = " << (run_dir / "kernel.csv").string() << '\n';
  return exit_ok;
}

int cmd_solve(const RunConfig& config, const fs::path& run_dir, std::ostream& out) {
  const GreenKernel kernel =
      obtain_kernel(config, config.problem.alpha, resolved_table_radius(config.kernel, config.problem.box));
  const SolveReport report = solve_and_write(config, config.problem, kernel, run_dir, out);
  out << "artifacts  = " << run_dir.string() << '\n';
  return report.ok() ? exit_ok : exit_no_convergence;
}

int cmd_verify(const RunConfig& config, const fs::path& run_dir, std::ostream& out) {
  const int m = std::max(resolved_table_radius(config.kernel, config.problem.box),
                         suite_table_radius(config.problem, config.verify));
  const GreenKernel kernel = obtain_kernel(config, config.problem.alpha, m);
  const SolveReport report = solve_and_write(config, config.problem, kernel, run_dir, out);
  if (!report.converged) {
    out << "verify needs a converged solve; artifacts in " << run_dir.string() << '\n';
    return exit_no_convergence;
  }
  const std::vector<PropertyReport> suite =
      run_verify_suite(config.problem, kernel, report, config.verify, solver_config(config));
  auto csv = open_out(run_dir / "suite.csv");
  write_suite_csv(csv, suite);
  write_suite_summary(out, suite);
  out << "artifacts  = " << run_dir.string() << '\n';
  if (all_pass(suite)) return exit_ok;
  out << "failing checks:";
  for (const auto& r : suite) {
    if (!r.pass) out << ' ' << r.name;
  }
  out << '\n';
  return exit_verify_failed;
}

int cmd_sweep(const RunConfig& config, const fs::path& run_dir, std::ostream& out) {
  const std::string& param = config.sweep.param;
  struct Row {
    double value;
    SolveReport report;
    std::string error;
  };
  std::vector<Row> rows;
  std::map<std::pair<double, int>, GreenKernel> kernels;

  for (double value : config.sweep.values) {
    Row row{value, {}, {}};
    try {
      ProblemSpec spec = config.problem;
      if (param == "b") {
        spec.b = value;
      } else if (param == "p") {
        spec.nonlinearity.p = value;
      } else if (param == "alpha") {
        spec.alpha = value;
      } else {
        const int r = static_cast<int>(value);
        spec.box = spec.box.standard_side() ? LatticeBox(r, spec.box.boundary()) : LatticeBox::even_torus(r);
      }
      spec.validate();
      const int m = resolved_table_radius(config.kernel, spec.box);
      auto it = kernels.find({spec.alpha, m});
      if (it == kernels.end()) it = kernels.emplace(std::pair{spec.alpha, m}, obtain_kernel(config, spec.alpha, m)).first;
      row.report = solve_ground_state(spec, it->second, solver_config(config));
      if (!row.report.converged) row.error = row.report.status;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream table;
  table << std::setprecision(17) << "param,value,energy,residual,norm,iterations\n";
  for (const Row& r : rows) {
    if (r.error.empty() || r.report.iterations > 0) {
      table << param << ',' << r.value << ',' << r.report.energy << ',' << r.report.residual << ',' << r.report.norm
            << ',' << r.report.iterations << '\n';
    } else {
      table << param << ',' << r.value << ",nan,nan,nan,0\n";
    }
  }

  // Observations on the converged points, in increasing parameter order.
  std::vector<const Row*> good;
  for (const Row& r : rows) {
    if (r.error.empty()) good.push_back(&r);
  }
  std::sort(good.begin(), good.end(), [](const Row* x, const Row* y) { return x->value < y->value; });
  bool violated = false;
  std::ostringstream notes;
  for (const Row& r : rows) {
    if (!r.error.empty()) notes << "# failed: " << param << " = " << r.value << ": " << r.error << '\n';
  }
  if (good.size() >= 2) {
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < good.size(); ++i) {
      const double prev = good[i - 1]->report.energy;
      const double cur = good[i]->report.energy;
      const double slack = 1e-6 * std::max(1.0, std::abs(prev));
      up = up && cur >= prev - slack;
      down = down && cur <= prev + slack;
    }
    notes << "# observation: energy is " << (up ? "nondecreasing" : down ? "nonincreasing" : "not monotone") << " in "
          << param << '\n';
    if (param == "b") {
      violated = !up;
      notes << "# check: J grows pointwise with b, so c(b) must be nondecreasing: " << (up ? "holds" : "VIOLATED")
            << '\n';
    }
    if (param == "radius" && config.problem.box.boundary() == Boundary::dirichlet_zero) {
      notes << "# expectation: nested dirichlet boxes give nonincreasing c: " << (down ? "holds" : "VIOLATED") << '\n';
    }
  }

  auto csv = open_out(run_dir / "sweep.csv");
  csv << table.str() << notes.str();
  out << table.str() << notes.str() << "artifacts  = " << run_dir.string() << '\n';

  if (good.size() != rows.size()) return exit_no_convergence;
  return violated ? exit_verify_failed : exit_ok;
}

int run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  using Fn = int (*)(const RunConfig&, const fs::path&, std::ostream&);
  Fn fn = nullptr;
  if (command == "green") fn = cmd_green;
  if (command == "solve") fn = cmd_solve;
  if (command == "verify") fn = cmd_verify;
  if (command == "sweep") fn = cmd_sweep;
  if (fn == nullptr) {
    err << "lkc: unknown command '" << command << "'\n";
    return exit_usage;
  }
  try {
    const fs::path run_dir = make_run_dir(config.output.directory);
    {
      auto snap = open_out(run_dir / "config.snapshot");
      snap << "# lkc " << command << '\n' << serialize_config(config);
    }
    return fn(config, run_dir, out);
  } catch (const QuadratureError& e) {
    err << "lkc: quadrature failure: " << e.what() << " (estimated error " << e.estimated_error() << ")\n";
    return exit_quadrature;
  } catch (const std::exception& e) {
    err << "lkc: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace lkc::cli
