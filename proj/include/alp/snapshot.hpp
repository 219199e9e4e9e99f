#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alp/field.hpp"

namespace alp {

// ALP1 record:
//   "ALP1" | n1 n2 n3 (uint64 LE) | reality flag (1 byte) |
//   n1*n2*n3 coefficients as (re, im) float64 LE, third axis fastest,
//   each axis in FFT order (0 .. n/2-1, -n/2 .. -1).
// A velocity snapshot is three records back to back.

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b, 8);
}

inline std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw std::runtime_error("ALP1: truncated record");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline void write_alp1(std::ostream& os, const SpectralField& u) {
  os.write("ALP1", 4);
  detail::put_u64(os, u.grid().n1());
  detail::put_u64(os, u.grid().n2());
  detail::put_u64(os, u.grid().n3());
  const char flag = u.is_real() ? 1 : 0;
  os.write(&flag, 1);
  for (const auto& c : u.coeffs()) {
    detail::put_u64(os, std::bit_cast<std::uint64_t>(c.real()));
    detail::put_u64(os, std::bit_cast<std::uint64_t>(c.imag()));
  }
}

inline SpectralField read_alp1(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "ALP1", 4) != 0) throw std::runtime_error("ALP1: bad magic");
  const auto n1 = detail::get_u64(is), n2 = detail::get_u64(is), n3 = detail::get_u64(is);
  char flag = 0;
  is.read(&flag, 1);
  if (!is) throw std::runtime_error("ALP1: truncated header");
  Grid g(n1, n2, n3);
  std::vector<cplx> c(g.size());
  for (auto& x : c) {
    const double re = std::bit_cast<double>(detail::get_u64(is));
    const double im = std::bit_cast<double>(detail::get_u64(is));
    x = cplx(re, im);
  }
  return SpectralField(g, std::move(c), flag != 0);
}

inline void write_snapshot(const std::string& path, const VectorField& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  for (int i = 0; i < 3; ++i) write_alp1(os, u[i]);
}

/// Reads every ALP1 record in a file.
inline std::vector<SpectralField> read_records(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<SpectralField> out;
  while (is.peek() != std::char_traits<char>::eof()) out.push_back(read_alp1(is));
  return out;
}

}  // namespace alp
