// Copyright 2026 The Termex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Little-endian primitives shared by the binary file formats. Readers track
// the byte offset so errors can point at it.

#ifndef TERMEX_BINARY_IO_H_
#define TERMEX_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "termex/error.h"

namespace termex {

class LittleEndianWriter {
 public:
  explicit LittleEndianWriter(std::ostream &out) : out_(out) {}

  void Bytes(std::string_view bytes) {
    out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  void U8(uint8_t v) { out_.put(static_cast<char>(v)); }
  void U32(uint32_t v) { Fixed(v, 4); }
  void U64(uint64_t v) { Fixed(v, 8); }
  void F32(float v) { U32(std::bit_cast<uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void String(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    Bytes(s);
  }

 private:
  void Fixed(uint64_t v, int width) {
    char buf[8];
    for (int i = 0; i < width; ++i) buf[i] = static_cast<char>(v >> (8 * i));
    out_.write(buf, width);
  }

  std::ostream &out_;
};

class LittleEndianReader {
 public:
  explicit LittleEndianReader(std::istream &in) : in_(in) {}

  uint64_t offset() const { return offset_; }

  // Reads exactly n bytes or throws FormatError naming `what`.
  std::string Bytes(size_t n, const char *what) {
    std::string buf(n, '\0');
    in_.read(buf.data(), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw FormatError(offset_, std::string("truncated input reading ") + what);
    }
    offset_ += n;
    return buf;
  }
  uint8_t U8(const char *what) {
    return static_cast<uint8_t>(Bytes(1, what)[0]);
  }
  uint32_t U32(const char *what) {
    return static_cast<uint32_t>(Fixed(4, what));
  }
  uint64_t U64(const char *what) { return Fixed(8, what); }
  float F32(const char *what) { return std::bit_cast<float>(U32(what)); }
  double F64(const char *what) { return std::bit_cast<double>(U64(what)); }
  std::string String(const char *what) {
    uint32_t n = U32(what);
    return Bytes(n, what);
  }

  bool AtEnd() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  uint64_t Fixed(int width, const char *what) {
    std::string buf = Bytes(static_cast<size_t>(width), what);
    uint64_t v = 0;
    for (int i = width - 1; i >= 0; --i) {
      v = (v << 8) | static_cast<uint8_t>(buf[i]);
    }
    return v;
  }

  std::istream &in_;
  uint64_t offset_ = 0;
};

}  // namespace termex

#endif  // TERMEX_BINARY_IO_H_
