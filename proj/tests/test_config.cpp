#include <gtest/gtest.h>

#include "config.hpp"

using namespace lkc;
using namespace lkc::cli;

namespace {

// Line number reported for `text`, or -1 when it parses.
int error_line(std::string_view text) {
  try {
    parse_config(text, "t.ini");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  EXPECT_EQ(parse_config(""), default_config());
  const RunConfig d = default_config();
  EXPECT_EQ(d.problem.box.radius(), 8);
  EXPECT_EQ(d.problem.potential.kind, PotentialKind::coercive);
  EXPECT_EQ(d.seed, 42u);
}

TEST(Config, SerializeRoundTripsExactly) {
  RunConfig c = default_config();
  c.seed = 7;
  c.threads = 3;
  c.problem.b = 0.1 + 0.2;  // not a short decimal
  c.problem.alpha = 1.0 / 3.0;
  c.problem.box = LatticeBox::even_torus(4);
  c.problem.potential = PotentialSpec::periodic(1.0, 2, {1, 2, 3, 4, 5, 6, 7, 8.125});
  c.solver.initial = InitialGuess::random;
  c.kernel.method = GreenMethod::torus_quadrature;
  c.kernel.resolution = 128;
  c.output.field_format = FieldFormat::binary;
  c.verify.hls_radii = {2, 5};
  c.sweep.param = "alpha";
  c.sweep.values = {0.5, 1.5};
  c.sync();
  const RunConfig back = parse_config(serialize_config(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(serialize_config(back), serialize_config(c));
}

TEST(Config, CommentsAndWhitespace) {
  const RunConfig c = parse_config(
      "; leading comment\n"
      "[problem]   # trailing\n"
      "  b = 0.25  # half of a half\n"
      "\n"
      "[run]\nseed=9\n");
  EXPECT_EQ(c.problem.b, 0.25);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.solver.seed, 9u);
}

TEST(Config, ErrorsNameTheLine) {
  EXPECT_EQ(error_line("[problem]\nb = -1\n"), 2);
  EXPECT_EQ(error_line("\n\n[nosuch]\n"), 3);
  EXPECT_EQ(error_line("[problem]\nzzz = 1\n"), 2);
  EXPECT_EQ(error_line("[problem]\nb = 1\nb = 2\n"), 3);
  EXPECT_EQ(error_line("[problem]\nb = abc\n"), 2);
  EXPECT_EQ(error_line("b = 1\n"), 1);
  EXPECT_EQ(error_line("[verify]\nhls_trials = 0\n"), 2);
  EXPECT_EQ(error_line("[nonlinearity]\np = 3\ntheta = 3\n"), 3);
  EXPECT_EQ(error_line("[kernel]\nmethod = torus_quadrature\nresolution = 70\n"), 3);
  try {
    parse_config("[problem]\na = 0\n", "bad.ini");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("bad.ini:2: ", 0), 0u) << e.what();
  }
}

TEST(Config, CrossChecks) {
  EXPECT_GT(error_line("[problem]\nradius = 5\n[kernel]\ntable_radius = 6\n"), 0);
  EXPECT_GT(error_line("[problem]\neven_side = true\n"), 0);
  EXPECT_GT(error_line("[solver]\ninitial = file\n"), 0);
  EXPECT_GT(error_line("[sweep]\nparam = radius\nvalues = 3.5\n"), 0);
  EXPECT_EQ(error_line("[problem]\nradius = 5\n[kernel]\ntable_radius = 10\n"), -1);
}

TEST(Config, ResolvedTableRadius) {
  KernelSection k;
  EXPECT_EQ(resolved_table_radius(k, LatticeBox(5)), 10);
  EXPECT_EQ(resolved_table_radius(k, LatticeBox::even_torus(6)), 6);
  k.table_radius = 14;
  EXPECT_EQ(resolved_table_radius(k, LatticeBox(5)), 14);
}
