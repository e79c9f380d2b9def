#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "lkc/field_io.hpp"
#include "lkc/rng.hpp"

using namespace lkc;

TEST(FieldIo, TextRoundTripIsExact) {
  Rng rng(1);
  for (const LatticeBox& box : {LatticeBox(2), LatticeBox(2, Boundary::periodic), LatticeBox::even_torus(2)}) {
    const Field u = normal_field(box, rng);
    std::stringstream s;
    write_field_text(s, u);
    const Field v = read_field_text(s);
    EXPECT_EQ(v.box(), u.box());
    EXPECT_EQ(v, u);
  }
}

TEST(FieldIo, BinaryRoundTripIsExact) {
  Rng rng(2);
  for (const LatticeBox& box : {LatticeBox(3), LatticeBox::even_torus(3)}) {
    const Field u = normal_field(box, rng);
    std::stringstream s;
    write_field_binary(s, u);
    EXPECT_EQ(read_field_binary(s), u);
  }
}

TEST(FieldIo, LoadDetectsFormat) {
  Rng rng(3);
  const Field u = normal_field(LatticeBox(2), rng);
  const auto dir = std::filesystem::temp_directory_path() / "lkc_field_io_test";
  std::filesystem::create_directories(dir);
  save_field(dir / "a.field", u, false);
  save_field(dir / "b.field", u, true);
  EXPECT_EQ(load_field(dir / "a.field"), u);
  EXPECT_EQ(load_field(dir / "b.field"), u);
  std::filesystem::remove_all(dir);
}

TEST(FieldIo, RejectsMalformedInput) {
  std::stringstream bad_header("# something else\n1\n");
  EXPECT_THROW(read_field_text(bad_header), FormatError);

  std::stringstream short_body("# lattice-field v1 radius=1 mode=dirichlet\n1\n2\n");
  EXPECT_THROW(read_field_text(short_body), FormatError);

  std::stringstream bad_magic("LCFIELDX");
  EXPECT_THROW(read_field_binary(bad_magic), FormatError);

  Rng rng(4);
  std::stringstream s;
  write_field_binary(s, normal_field(LatticeBox(1), rng));
  std::string bytes = s.str();
  bytes.resize(bytes.size() - 3);
  std::stringstream truncated(bytes);
  EXPECT_THROW(read_field_binary(truncated), FormatError);
}
