#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace lkc::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string num_str(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
std::string list_str(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += num_str(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

struct State;

struct Key {
  const char* section;
  const char* name;
  std::function<void(State&, std::string_view, int)> set;
  std::function<std::string(const RunConfig&)> get;
};

struct State {
  std::string source;
  RunConfig cfg = default_config();
  int radius = 8;
  Boundary boundary = Boundary::dirichlet_zero;
  bool even_side = false;
  std::map<std::string, int> key_lines;  // "section.key" -> line
  std::map<std::string, int> section_lines;

  [[noreturn]] void fail(int line, const std::string& message) const { throw ConfigError(source, line, message); }

  int line_of(const std::string& section, const std::string& key) const {
    if (auto it = key_lines.find(section + "." + key); it != key_lines.end()) return it->second;
    if (auto it = section_lines.find(section); it != section_lines.end()) return it->second;
    return 0;
  }

  double real(std::string_view v, int line) const {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail(line, "expected a finite number, got '" + std::string(v) + "'");
    }
    return out;
  }

  long long integer(std::string_view v, int line) const {
    long long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      fail(line, "expected an integer, got '" + std::string(v) + "'");
    }
    return out;
  }

  int bounded_int(std::string_view v, int line, long long lo, const char* what) const {
    const long long x = integer(v, line);
    if (x < lo || x > 1'000'000'000LL) fail(line, std::string(what) + " must be an integer >= " + std::to_string(lo));
    return static_cast<int>(x);
  }

  double positive(std::string_view v, int line, const char* what) const {
    const double x = real(v, line);
    if (!(x > 0.0)) fail(line, std::string(what) + " must be positive");
    return x;
  }

  double unit_open(std::string_view v, int line, const char* what) const {
    const double x = real(v, line);
    if (!(x > 0.0 && x < 1.0)) fail(line, std::string(what) + " must lie in (0, 1)");
    return x;
  }

  bool boolean(std::string_view v, int line) const {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(line, "expected true or false, got '" + std::string(v) + "'");
  }

  std::vector<double> reals(std::string_view v, int line) const {
    std::vector<double> out;
    for (auto item : split_list(v)) out.push_back(real(item, line));
    return out;
  }

  std::vector<int> radii(std::string_view v, int line, const char* what) const {
    std::vector<int> out;
    for (auto item : split_list(v)) out.push_back(bounded_int(item, line, 1, what));
    if (out.empty()) fail(line, std::string(what) + " must not be empty");
    return out;
  }
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      // [run]
      {"run", "seed",
       [](State& s, std::string_view v, int line) {
         std::uint64_t x = 0;
         const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
         if (res.ec != std::errc() || res.ptr != v.data() + v.size()) s.fail(line, "seed must be an unsigned 64-bit integer");
         s.cfg.seed = x;
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"run", "threads", [](State& s, std::string_view v, int line) { s.cfg.threads = s.bounded_int(v, line, 1, "threads"); },
       [](const RunConfig& c) { return std::to_string(c.threads); }},

      // [problem]
      {"problem", "a", [](State& s, std::string_view v, int line) { s.cfg.problem.a = s.positive(v, line, "a"); },
       [](const RunConfig& c) { return num_str(c.problem.a); }},
      {"problem", "b",
       [](State& s, std::string_view v, int line) {
         const double x = s.real(v, line);
         if (!(x >= 0.0)) s.fail(line, "b must be nonnegative");
         s.cfg.problem.b = x;
       },
       [](const RunConfig& c) { return num_str(c.problem.b); }},
      {"problem", "alpha",
       [](State& s, std::string_view v, int line) {
         const double x = s.real(v, line);
         if (!(x > 0.0 && x < 3.0)) s.fail(line, "alpha must lie in (0, 3)");
         s.cfg.problem.alpha = x;
       },
       [](const RunConfig& c) { return num_str(c.problem.alpha); }},
      {"problem", "radius", [](State& s, std::string_view v, int line) { s.radius = s.bounded_int(v, line, 1, "radius"); },
       [](const RunConfig& c) { return std::to_string(c.problem.box.radius()); }},
      {"problem", "boundary",
       [](State& s, std::string_view v, int line) {
         try {
           s.boundary = boundary_from_string(v);
         } catch (const std::exception& e) {
           s.fail(line, e.what());
         }
       },
       [](const RunConfig& c) { return std::string(to_string(c.problem.box.boundary())); }},
      {"problem", "even_side", [](State& s, std::string_view v, int line) { s.even_side = s.boolean(v, line); },
       [](const RunConfig& c) { return bool_str(!c.problem.box.standard_side()); }},

      // [potential]
      {"potential", "kind",
       [](State& s, std::string_view v, int line) {
         try {
           s.cfg.problem.potential.kind = potential_kind_from_string(v);
         } catch (const std::exception& e) {
           s.fail(line, e.what());
         }
       },
       [](const RunConfig& c) { return std::string(to_string(c.problem.potential.kind)); }},
      {"potential", "V0", [](State& s, std::string_view v, int line) { s.cfg.problem.potential.V0 = s.positive(v, line, "V0"); },
       [](const RunConfig& c) { return num_str(c.problem.potential.V0); }},
      {"potential", "center",
       [](State& s, std::string_view v, int line) {
         const auto items = split_list(v);
         if (items.size() != 3) s.fail(line, "center needs three comma-separated integers");
         for (int i = 0; i < 3; ++i) s.cfg.problem.potential.center[i] = static_cast<int>(s.integer(items[i], line));
       },
       [](const RunConfig& c) {
         const Index3 x = c.problem.potential.center;
         return std::to_string(x.x1) + ", " + std::to_string(x.x2) + ", " + std::to_string(x.x3);
       }},
      {"potential", "lambda",
       [](State& s, std::string_view v, int line) { s.cfg.problem.potential.lambda = s.positive(v, line, "lambda"); },
       [](const RunConfig& c) { return num_str(c.problem.potential.lambda); }},
      {"potential", "beta", [](State& s, std::string_view v, int line) { s.cfg.problem.potential.beta = s.positive(v, line, "beta"); },
       [](const RunConfig& c) { return num_str(c.problem.potential.beta); }},
      {"potential", "period",
       [](State& s, std::string_view v, int line) { s.cfg.problem.potential.period = s.bounded_int(v, line, 1, "period"); },
       [](const RunConfig& c) { return std::to_string(c.problem.potential.period); }},
      {"potential", "table", [](State& s, std::string_view v, int line) { s.cfg.problem.potential.table = s.reals(v, line); },
       [](const RunConfig& c) { return list_str(c.problem.potential.table); }},

      // [nonlinearity]
      {"nonlinearity", "c", [](State& s, std::string_view v, int line) { s.cfg.problem.nonlinearity.c = s.positive(v, line, "c"); },
       [](const RunConfig& c) { return num_str(c.problem.nonlinearity.c); }},
      {"nonlinearity", "p",
       [](State& s, std::string_view v, int line) {
         const double x = s.real(v, line);
         if (!(x > 2.0)) s.fail(line, "p must exceed 2");
         s.cfg.problem.nonlinearity.p = x;
       },
       [](const RunConfig& c) { return num_str(c.problem.nonlinearity.p); }},
      {"nonlinearity", "theta",
       [](State& s, std::string_view v, int line) {
         const double x = s.real(v, line);
         if (x < 0.0) s.fail(line, "theta must be 0 (meaning 2p) or in (4, 2p]");
         s.cfg.problem.nonlinearity.theta = x;
       },
       [](const RunConfig& c) { return num_str(c.problem.nonlinearity.theta); }},

      // [solver]
      {"solver", "max_iterations",
       [](State& s, std::string_view v, int line) { s.cfg.solver.max_iterations = s.bounded_int(v, line, 1, "max_iterations"); },
       [](const RunConfig& c) { return std::to_string(c.solver.max_iterations); }},
      {"solver", "gradient_tolerance",
       [](State& s, std::string_view v, int line) {
         s.cfg.solver.gradient_tolerance = s.positive(v, line, "gradient_tolerance");
       },
       [](const RunConfig& c) { return num_str(c.solver.gradient_tolerance); }},
      {"solver", "backtrack_factor",
       [](State& s, std::string_view v, int line) {
         s.cfg.solver.backtrack_factor = s.unit_open(v, line, "backtrack_factor");
       },
       [](const RunConfig& c) { return num_str(c.solver.backtrack_factor); }},
      {"solver", "sufficient_decrease",
       [](State& s, std::string_view v, int line) {
         s.cfg.solver.sufficient_decrease = s.unit_open(v, line, "sufficient_decrease");
       },
       [](const RunConfig& c) { return num_str(c.solver.sufficient_decrease); }},
      {"solver", "max_backtracks",
       [](State& s, std::string_view v, int line) { s.cfg.solver.max_backtracks = s.bounded_int(v, line, 1, "max_backtracks"); },
       [](const RunConfig& c) { return std::to_string(c.solver.max_backtracks); }},
      {"solver", "nehari_root_tolerance",
       [](State& s, std::string_view v, int line) {
         s.cfg.solver.nehari_root_tolerance = s.positive(v, line, "nehari_root_tolerance");
       },
       [](const RunConfig& c) { return num_str(c.solver.nehari_root_tolerance); }},
      {"solver", "cg_tolerance",
       [](State& s, std::string_view v, int line) { s.cfg.solver.cg_tolerance = s.positive(v, line, "cg_tolerance"); },
       [](const RunConfig& c) { return num_str(c.solver.cg_tolerance); }},
      {"solver", "initial",
       [](State& s, std::string_view v, int line) {
         try {
           s.cfg.solver.initial = initial_guess_from_string(v);
         } catch (const std::exception& e) {
           s.fail(line, e.what());
         }
       },
       [](const RunConfig& c) { return std::string(to_string(c.solver.initial)); }},
      {"solver", "initial_file", [](State& s, std::string_view v, int) { s.cfg.initial_file = std::string(v); },
       [](const RunConfig& c) { return c.initial_file; }},
      {"solver", "bump_width",
       [](State& s, std::string_view v, int line) {
         const double x = s.real(v, line);
         if (x < 0.0) s.fail(line, "bump_width must be nonnegative");
         s.cfg.solver.bump_width = x;
       },
       [](const RunConfig& c) { return num_str(c.solver.bump_width); }},
      {"solver", "eta_samples",
       [](State& s, std::string_view v, int line) { s.cfg.solver.eta_samples = s.bounded_int(v, line, 0, "eta_samples"); },
       [](const RunConfig& c) { return std::to_string(c.solver.eta_samples); }},

      // [kernel]
      {"kernel", "table_radius",
       [](State& s, std::string_view v, int line) { s.cfg.kernel.table_radius = s.bounded_int(v, line, 0, "table_radius"); },
       [](const RunConfig& c) { return std::to_string(c.kernel.table_radius); }},
      {"kernel", "method",
       [](State& s, std::string_view v, int line) {
         try {
           s.cfg.kernel.method = green_method_from_string(v);
         } catch (const std::exception& e) {
           s.fail(line, e.what());
         }
       },
       [](const RunConfig& c) { return std::string(to_string(c.kernel.method)); }},
      {"kernel", "resolution",
       [](State& s, std::string_view v, int line) { s.cfg.kernel.resolution = s.bounded_int(v, line, 1, "resolution"); },
       [](const RunConfig& c) { return std::to_string(c.kernel.resolution); }},
      {"kernel", "tolerance",
       [](State& s, std::string_view v, int line) { s.cfg.kernel.tolerance = s.positive(v, line, "tolerance"); },
       [](const RunConfig& c) { return num_str(c.kernel.tolerance); }},
      {"kernel", "cache_dir",
       [](State& s, std::string_view v, int line) {
         if (v.empty()) s.fail(line, "cache_dir must not be empty");
         s.cfg.kernel.cache_dir = std::string(v);
       },
       [](const RunConfig& c) { return c.kernel.cache_dir; }},

      // [output]
      {"output", "directory",
       [](State& s, std::string_view v, int line) {
         if (v.empty()) s.fail(line, "directory must not be empty");
         s.cfg.output.directory = std::string(v);
       },
       [](const RunConfig& c) { return c.output.directory; }},
      {"output", "field_format",
       [](State& s, std::string_view v, int line) {
         if (v == "text") {
           s.cfg.output.field_format = FieldFormat::text;
         } else if (v == "binary") {
           s.cfg.output.field_format = FieldFormat::binary;
         } else {
           s.fail(line, "field_format must be text or binary");
         }
       },
       [](const RunConfig& c) { return std::string(c.output.field_format == FieldFormat::binary ? "binary" : "text"); }},

      // [verify]
      {"verify", "mountain_pass_trials",
       [](State& s, std::string_view v, int line) {
         s.cfg.verify.mountain_pass_trials = s.bounded_int(v, line, 10, "mountain_pass_trials");
       },
       [](const RunConfig& c) { return std::to_string(c.verify.mountain_pass_trials); }},
      {"verify", "mountain_pass_max_halvings",
       [](State& s, std::string_view v, int line) {
         s.cfg.verify.mountain_pass_max_halvings = s.bounded_int(v, line, 1, "mountain_pass_max_halvings");
       },
       [](const RunConfig& c) { return std::to_string(c.verify.mountain_pass_max_halvings); }},
      {"verify", "hls_trials",
       [](State& s, std::string_view v, int line) { s.cfg.verify.hls_trials = s.bounded_int(v, line, 1, "hls_trials"); },
       [](const RunConfig& c) { return std::to_string(c.verify.hls_trials); }},
      {"verify", "hls_radii",
       [](State& s, std::string_view v, int line) { s.cfg.verify.hls_radii = s.radii(v, line, "hls_radii"); },
       [](const RunConfig& c) { return list_str(c.verify.hls_radii); }},
      {"verify", "hls_tolerance",
       [](State& s, std::string_view v, int line) { s.cfg.verify.hls_tolerance = s.positive(v, line, "hls_tolerance"); },
       [](const RunConfig& c) { return num_str(c.verify.hls_tolerance); }},
      {"verify", "fiber_trials",
       [](State& s, std::string_view v, int line) { s.cfg.verify.fiber_trials = s.bounded_int(v, line, 1, "fiber_trials"); },
       [](const RunConfig& c) { return std::to_string(c.verify.fiber_trials); }},
      {"verify", "fiber_grid",
       [](State& s, std::string_view v, int line) { s.cfg.verify.fiber_grid = s.bounded_int(v, line, 2, "fiber_grid"); },
       [](const RunConfig& c) { return std::to_string(c.verify.fiber_grid); }},
      {"verify", "fiber_tolerance",
       [](State& s, std::string_view v, int line) { s.cfg.verify.fiber_tolerance = s.positive(v, line, "fiber_tolerance"); },
       [](const RunConfig& c) { return num_str(c.verify.fiber_tolerance); }},
      {"verify", "level_samples",
       [](State& s, std::string_view v, int line) { s.cfg.verify.level_samples = s.bounded_int(v, line, 1, "level_samples"); },
       [](const RunConfig& c) { return std::to_string(c.verify.level_samples); }},
      {"verify", "level_tolerance",
       [](State& s, std::string_view v, int line) { s.cfg.verify.level_tolerance = s.positive(v, line, "level_tolerance"); },
       [](const RunConfig& c) { return num_str(c.verify.level_tolerance); }},
      {"verify", "segment_tolerance",
       [](State& s, std::string_view v, int line) {
         s.cfg.verify.segment_tolerance = s.positive(v, line, "segment_tolerance");
       },
       [](const RunConfig& c) { return num_str(c.verify.segment_tolerance); }},
      {"verify", "box_radii",
       [](State& s, std::string_view v, int line) {
         auto r = s.radii(v, line, "box_radii");
         if (r.size() < 2 || !std::is_sorted(r.begin(), r.end()) || std::adjacent_find(r.begin(), r.end()) != r.end()) {
           s.fail(line, "box_radii must hold at least two strictly increasing radii");
         }
         s.cfg.verify.box_radii = std::move(r);
       },
       [](const RunConfig& c) { return list_str(c.verify.box_radii); }},
      {"verify", "box_tolerance",
       [](State& s, std::string_view v, int line) { s.cfg.verify.box_tolerance = s.positive(v, line, "box_tolerance"); },
       [](const RunConfig& c) { return num_str(c.verify.box_tolerance); }},
      {"verify", "translation_tolerance",
       [](State& s, std::string_view v, int line) {
         s.cfg.verify.translation_tolerance = s.positive(v, line, "translation_tolerance");
       },
       [](const RunConfig& c) { return num_str(c.verify.translation_tolerance); }},
      {"verify", "symmetry_tolerance",
       [](State& s, std::string_view v, int line) {
         s.cfg.verify.symmetry_tolerance = s.positive(v, line, "symmetry_tolerance");
       },
       [](const RunConfig& c) { return num_str(c.verify.symmetry_tolerance); }},

      // [sweep]
      {"sweep", "param",
       [](State& s, std::string_view v, int line) {
         if (v != "b" && v != "p" && v != "alpha" && v != "radius") s.fail(line, "param must be one of b, p, alpha, radius");
         s.cfg.sweep.param = std::string(v);
       },
       [](const RunConfig& c) { return c.sweep.param; }},
      {"sweep", "values",
       [](State& s, std::string_view v, int line) {
         auto values = s.reals(v, line);
         if (values.empty()) s.fail(line, "values must not be empty");
         s.cfg.sweep.values = std::move(values);
       },
       [](const RunConfig& c) { return list_str(c.sweep.values); }},
  };
  return table;
}

const Key* find_key(std::string_view section, std::string_view name) {
  for (const Key& k : keys()) {
    if (section == k.section && name == k.name) return &k;
  }
  return nullptr;
}

// Cross-field messages from ProblemSpec::validate, mapped to the key to blame.
struct Blame {
  const char* prefix;
  const char* section;
  const char* key;
};
constexpr Blame kProblemBlame[] = {
    {"alpha", "problem", "alpha"},
    {"a must", "problem", "a"},
    {"b must", "problem", "b"},
    {"V0", "potential", "V0"},
    {"lambda", "potential", "lambda"},
    {"beta", "potential", "beta"},
    {"period must", "potential", "period"},
    {"periodic table", "potential", "table"},
    {"potential period", "potential", "period"},
    {"nonlinearity coefficient", "nonlinearity", "c"},
    {"exponent p", "nonlinearity", "p"},
    {"theta", "nonlinearity", "theta"},
};

void finish(State& s) {
  RunConfig& cfg = s.cfg;
  if (s.even_side && s.boundary != Boundary::periodic) {
    s.fail(s.line_of("problem", "even_side"), "even_side requires boundary = periodic");
  }
  cfg.problem.box = s.even_side ? LatticeBox::even_torus(s.radius) : LatticeBox(s.radius, s.boundary);

  try {
    cfg.problem.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    int line = 0;
    for (const Blame& b : kProblemBlame) {
      if (msg.rfind(b.prefix, 0) == 0) {
        line = s.line_of(b.section, b.key);
        break;
      }
    }
    s.fail(line, msg);
  }

  const int need = GreenKernel::required_radius(cfg.problem.box);
  if (cfg.kernel.table_radius != 0 && cfg.kernel.table_radius < need) {
    s.fail(s.line_of("kernel", "table_radius"), "table_radius " + std::to_string(cfg.kernel.table_radius) +
                                                     " does not cover the box; it needs at least " + std::to_string(need));
  }
  if (cfg.kernel.method == GreenMethod::torus_quadrature &&
      (cfg.kernel.resolution % 16 != 0 || cfg.kernel.resolution < 64)) {
    s.fail(s.line_of("kernel", "resolution"), "torus resolution must be a multiple of 16 and at least 64");
  }
  if (cfg.solver.initial == InitialGuess::file && cfg.initial_file.empty()) {
    s.fail(s.line_of("solver", "initial"), "initial = file needs initial_file");
  }
  if (cfg.sweep.param == "radius") {
    for (double v : cfg.sweep.values) {
      if (!(v >= 1.0) || v != std::floor(v)) s.fail(s.line_of("sweep", "values"), "radius values must be positive integers");
    }
  }
  cfg.sync();
}

}  // namespace

ConfigError::ConfigError(std::string_view source, int line, const std::string& message)
    : std::runtime_error(std::string(source) + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

void RunConfig::sync() {
  solver.seed = seed;
  verify.seed = seed;
  verify.threads = threads;
}

RunConfig default_config() {
  RunConfig c;
  c.problem.potential = PotentialSpec::coercive(1.0, {0, 0, 0}, 1.0, 2.0);
  c.sync();
  return c;
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  State s;
  s.source = std::string(source);
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') s.fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const bool known = std::any_of(keys().begin(), keys().end(), [&](const Key& k) { return section == k.section; });
      if (!known) s.fail(line_no, "unknown section [" + section + "]");
      if (s.section_lines.count(section)) s.fail(line_no, "section [" + section + "] appears twice");
      s.section_lines[section] = line_no;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) s.fail(line_no, "expected 'key = value'");
    if (section.empty()) s.fail(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const Key* k = find_key(section, key);
    if (k == nullptr) s.fail(line_no, "unknown key '" + key + "' in [" + section + "]");
    if (!s.key_lines.emplace(section + "." + key, line_no).second) {
      s.fail(line_no, "key '" + key + "' repeated in [" + section + "]");
    }
    k->set(s, value, line_no);
  }
  finish(s);
  return s.cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Key& k : keys()) {
    if (section != k.section) {
      if (!section.empty()) out << '\n';
      section = k.section;
      out << '[' << section << "]\n";
    }
    out << k.name << " = " << k.get(config) << '\n';
  }
  return out.str();
}

int resolved_table_radius(const KernelSection& kernel, const LatticeBox& box) {
  return std::max(kernel.table_radius, GreenKernel::required_radius(box));
}

}  // namespace lkc::cli
