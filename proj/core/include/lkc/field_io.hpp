#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lkc/lattice.hpp"

namespace lkc {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format:
//   # lattice-field v1 radius=<n> mode=<dirichlet|periodic>[ side=<L>]
//   one value per line in row-major site order, %.17g.
// The side token appears only for even-sided tori.
//
// Binary format (little endian):
//   "LCFIELD1", u32 radius, u8 mode, [u32 side if mode == 2], f64 values...
// Mode byte: 0 dirichlet, 1 periodic, 2 periodic with explicit side.

void write_field_text(std::ostream& out, const Field& u);
Field read_field_text(std::istream& in);
void write_field_binary(std::ostream& out, const Field& u);
Field read_field_binary(std::istream& in);

void save_field(const std::filesystem::path& path, const Field& u, bool binary = false);
/// Detects the format from the leading bytes.
Field load_field(const std::filesystem::path& path);

}  // namespace lkc
