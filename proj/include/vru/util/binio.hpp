#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vru::util {

// Little-endian primitives for the corpus / checkpoint / mask containers.

inline void write_u8(std::ostream& os, uint8_t v) { os.put(static_cast<char>(v)); }

inline void write_u16(std::ostream& os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  os.write(b, 2);
}

inline void write_u32(std::ostream& os, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

inline void write_u64(std::ostream& os, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

inline void write_f32(std::ostream& os, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  write_u32(os, bits);
}

inline void write_f64(std::ostream& os, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(os, bits);
}

inline void write_string(std::ostream& os, const std::string& s) {
  write_u32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline void read_exact(std::istream& is, char* dst, size_t n, const char* what) {
  is.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n)
    throw std::runtime_error(std::string("truncated read: ") + what);
}

inline uint8_t read_u8(std::istream& is, const char* what = "u8") {
  char b;
  read_exact(is, &b, 1, what);
  return static_cast<uint8_t>(b);
}

inline uint16_t read_u16(std::istream& is, const char* what = "u16") {
  char b[2];
  read_exact(is, b, 2, what);
  return static_cast<uint16_t>(static_cast<uint8_t>(b[0])) |
         (static_cast<uint16_t>(static_cast<uint8_t>(b[1])) << 8);
}

inline uint32_t read_u32(std::istream& is, const char* what = "u32") {
  char b[4];
  read_exact(is, b, 4, what);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<uint8_t>(b[i])) << (8 * i);
  return v;
}

inline uint64_t read_u64(std::istream& is, const char* what = "u64") {
  char b[8];
  read_exact(is, b, 8, what);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<uint8_t>(b[i])) << (8 * i);
  return v;
}

inline float read_f32(std::istream& is, const char* what = "f32") {
  uint32_t bits = read_u32(is, what);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

inline double read_f64(std::istream& is, const char* what = "f64") {
  uint64_t bits = read_u64(is, what);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

inline std::string read_string(std::istream& is, const char* what = "string") {
  uint32_t n = read_u32(is, what);
  std::string s(n, '\0');
  if (n) read_exact(is, s.data(), n, what);
  return s;
}

}  // namespace vru::util
