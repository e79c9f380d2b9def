#include "lkc/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "byte_io.hpp"

namespace lkc {

namespace {

constexpr std::array<char, 8> kFieldMagic = {'L', 'C', 'F', 'I', 'E', 'L', 'D', '1'};

std::string header_value(const std::string& header, const std::string& key) {
  const std::string token = " " + key + "=";
  const auto pos = header.find(token);
  if (pos == std::string::npos) return {};
  const auto start = pos + token.size();
  const auto end = header.find(' ', start);
  return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

int parse_int(const std::string& text, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(std::string("bad ") + what + " '" + text + "' in field header");
  }
  return value;
}

LatticeBox make_box(int radius, Boundary mode, int side) {
  if (side == 2 * radius + 1) return LatticeBox(radius, mode);
  if (mode == Boundary::periodic && side == 2 * radius) return LatticeBox::even_torus(radius);
  throw FormatError("unsupported box side " + std::to_string(side) + " for radius " +
                    std::to_string(radius));
}

}  // namespace

void write_field_text(std::ostream& out, const Field& u) {
  const LatticeBox& box = u.box();
  out << "# lattice-field v1 radius=" << box.radius() << " mode=" << to_string(box.boundary());
  if (!box.standard_side()) out << " side=" << box.side();
  out << '\n';
  char buf[40];
  for (double v : u.values()) {
    const int n = std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out.write(buf, n);
  }
}

Field read_field_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# lattice-field v1", 0) != 0) {
    throw FormatError("missing '# lattice-field v1' header");
  }
  const std::string radius_text = header_value(header, "radius");
  const std::string mode_text = header_value(header, "mode");
  if (radius_text.empty() || mode_text.empty()) throw FormatError("field header lacks radius or mode");
  const int radius = parse_int(radius_text, "radius");
  const Boundary mode = boundary_from_string(mode_text);
  const std::string side_text = header_value(header, "side");
  const int side = side_text.empty() ? 2 * radius + 1 : parse_int(side_text, "side");
  const LatticeBox box = make_box(radius, mode, side);

  std::vector<double> values;
  values.reserve(box.site_count());
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + line + "'");
    }
    values.push_back(v);
  }
  if (values.size() != box.site_count()) {
    throw FormatError("expected " + std::to_string(box.site_count()) + " values, read " +
                      std::to_string(values.size()));
  }
  Field f(box, std::move(values));
  if (!f.all_finite()) throw FormatError("field contains non-finite values");
  return f;
}

void write_field_binary(std::ostream& out, const Field& u) {
  const LatticeBox& box = u.box();
  out.write(kFieldMagic.data(), kFieldMagic.size());
  detail::put_u32(out, static_cast<std::uint32_t>(box.radius()));
  std::uint8_t mode = static_cast<std::uint8_t>(box.boundary());
  if (!box.standard_side()) mode = 2;
  out.put(static_cast<char>(mode));
  if (mode == 2) detail::put_u32(out, static_cast<std::uint32_t>(box.side()));
  for (double v : u.values()) detail::put_f64(out, v);
}

Field read_field_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kFieldMagic) throw FormatError("bad field magic");
  const auto radius = static_cast<int>(detail::get_u32(in));
  const int mode_byte = in.get();
  if (!in || mode_byte < 0 || mode_byte > 2) throw FormatError("bad boundary mode byte");
  const Boundary mode = mode_byte == 0 ? Boundary::dirichlet_zero : Boundary::periodic;
  const int side = mode_byte == 2 ? static_cast<int>(detail::get_u32(in)) : 2 * radius + 1;
  const LatticeBox box = make_box(radius, mode, side);
  std::vector<double> values(box.site_count());
  for (double& v : values) v = detail::get_f64(in);
  if (!in) throw FormatError("truncated binary field");
  Field f(box, std::move(values));
  if (!f.all_finite()) throw FormatError("field contains non-finite values");
  return f;
}

void save_field(const std::filesystem::path& path, const Field& u, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (binary) {
    write_field_binary(out, u);
  } else {
    write_field_text(out, u);
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Field load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const int first = in.peek();
  if (first == 'L') return read_field_binary(in);
  return read_field_text(in);
}

}  // namespace lkc
