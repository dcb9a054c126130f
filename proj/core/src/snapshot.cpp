#include "dinls/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dinls/error.hpp"

namespace dinls {

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw Error(ErrorCode::IoError, "truncated binary snapshot");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot_csv(std::ostream& out, const Field& field) {
  const auto r = field.grid().nodes();
  char line[96];
  out << "r,re_u,im_u\n";
  for (std::size_t j = 0; j < field.size(); ++j) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", r[j], field[j].real(), field[j].imag());
    out << line;
  }
}

void write_snapshot_binary(std::ostream& out, const Field& field) {
  const auto& g = field.grid();
  put_le<std::int32_t>(out, g.dimension());
  put_le<double>(out, g.radius());
  put_le<std::int32_t>(out, g.size());
  put_le<double>(out, field.time());
  for (const auto& v : field.values()) {
    put_le<double>(out, v.real());
    put_le<double>(out, v.imag());
  }
}

Field read_snapshot_binary(std::istream& in) {
  const auto n = get_le<std::int32_t>(in);
  const auto radius = get_le<double>(in);
  const auto m = get_le<std::int32_t>(in);
  const auto t = get_le<double>(in);
  auto grid = make_radial_grid(n, radius, m);
  std::vector<Complex> values(static_cast<std::size_t>(m));
  for (auto& v : values) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    v = {re, im};
  }
  return Field(std::move(grid), std::move(values), t);
}

Field read_snapshot_csv(std::istream& in, const GridPtr& grid, double time) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,", 0) != 0)
    throw Error(ErrorCode::IoError, "snapshot CSV lacks the r,re_u,im_u header");
  std::vector<Complex> values;
  const auto r = grid->nodes();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double cols[3];
    std::istringstream row(line);
    for (double& c : cols) {
      std::string cell;
      if (!std::getline(row, cell, ',')) throw Error(ErrorCode::IoError, "short CSV row: " + line);
      c = std::stod(cell);
    }
    const std::size_t j = values.size();
    if (j >= r.size() || std::abs(cols[0] - r[j]) > 1e-9 * grid->radius())
      throw Error(ErrorCode::LengthMismatch, "CSV radius column does not match the grid at row " + std::to_string(j));
    values.emplace_back(cols[1], cols[2]);
  }
  return Field(grid, std::move(values), time);
}

Field load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open snapshot " + path);
  return read_snapshot_binary(in);
}

}  // namespace dinls
