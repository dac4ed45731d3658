// Copyright (c) 2026 The livseg Authors
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

#ifndef LIVSEG__PNM_HPP_
#define LIVSEG__PNM_HPP_

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "livseg/error.hpp"
#include "livseg/image.hpp"

namespace livseg
{

using Bytes = std::vector<std::uint8_t>;

/// Parsed netpbm header plus the offset of the first raster byte.
struct PnmHeader
{
  char kind{};  // '5' for PGM, '6' for PPM
  std::size_t width{};
  std::size_t height{};
  std::uint32_t maxval{};
  std::size_t raster_offset{};

  std::size_t bytes_per_sample() const {return maxval > 255 ? 2 : 1;}
};

namespace pnm_impl
{

inline bool is_space(std::uint8_t c)
{
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
inline std::uint64_t next_number(std::span<const std::uint8_t> bytes, std::size_t & pos)
{
  for (;; ) {
    if (pos >= bytes.size()) {
      throw MalformedHeader("header ends before all fields were read");
    }
    if (is_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n' && bytes[pos] != '\r') {
        ++pos;
      }
    } else {
      break;
    }
  }
  if (!std::isdigit(bytes[pos])) {
    throw MalformedHeader("non-numeric header field");
  }
  std::uint64_t value = 0;
  while (pos < bytes.size() && std::isdigit(bytes[pos])) {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 0xFFFFFFFFull) {
      throw MalformedHeader("header field out of range");
    }
    ++pos;
  }
  if (pos < bytes.size() && !is_space(bytes[pos]) && bytes[pos] != '#') {
    throw MalformedHeader("non-numeric header field");
  }
  return value;
}

inline std::string header_text(char kind, std::size_t w, std::size_t h, std::uint32_t maxval)
{
  return std::string("P") + kind + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
         std::to_string(maxval) + "\n";
}

}  // namespace pnm_impl

/// Parse a binary P5/P6 header. Only the header is validated here.
inline PnmHeader parse_pnm_header(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw MalformedHeader("bad magic number");
  }
  PnmHeader h;
  h.kind = static_cast<char>(bytes[1]);
  std::size_t pos = 2;
  const auto w = pnm_impl::next_number(bytes, pos);
  const auto hh = pnm_impl::next_number(bytes, pos);
  const auto maxval = pnm_impl::next_number(bytes, pos);
  if (w == 0 || hh == 0) {
    throw MalformedHeader("zero image dimension");
  }
  if (maxval == 0 || maxval > 65535) {
    throw UnsupportedMaxval("maxval " + std::to_string(maxval) + " outside [1, 65535]");
  }
  // exactly one whitespace byte separates the header from the raster
  if (pos >= bytes.size() || !pnm_impl::is_space(bytes[pos])) {
    throw MalformedHeader("missing whitespace before raster");
  }
  h.width = static_cast<std::size_t>(w);
  h.height = static_cast<std::size_t>(hh);
  h.maxval = static_cast<std::uint32_t>(maxval);
  h.raster_offset = pos + 1;
  return h;
}

/// Decode a binary PGM (P5). 16-bit samples are big-endian.
inline GrayImage read_pgm(std::span<const std::uint8_t> bytes)
{
  const PnmHeader h = parse_pnm_header(bytes);
  if (h.kind != '5') {
    throw MalformedHeader("expected P5 magic");
  }
  const std::size_t n = h.width * h.height;
  const std::size_t bps = h.bytes_per_sample();
  if (bytes.size() - h.raster_offset < n * bps) {
    throw TruncatedData(
            "raster holds " + std::to_string((bytes.size() - h.raster_offset) / bps) +
            " samples, expected " + std::to_string(n));
  }
  std::vector<std::uint16_t> px(n);
  const std::uint8_t * raster = bytes.data() + h.raster_offset;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint16_t v = bps == 1 ?
      raster[i] :
      static_cast<std::uint16_t>((raster[2 * i] << 8) | raster[2 * i + 1]);
    if (v > h.maxval) {
      throw MalformedHeader("sample " + std::to_string(i) + " exceeds maxval");
    }
    px[i] = v;
  }
  return GrayImage(h.width, h.height, std::move(px), static_cast<std::uint16_t>(h.maxval));
}

inline Bytes write_pgm(const GrayImage & img)
{
  const std::string header = pnm_impl::header_text('5', img.width(), img.height(), img.max_value());
  const bool wide = img.max_value() > 255;
  Bytes out(header.begin(), header.end());
  out.reserve(header.size() + img.size() * (wide ? 2 : 1));
  for (const auto v : img.pixels()) {
    if (wide) {
      out.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  }
  return out;
}

inline Bytes read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoFailure("cannot open " + path.string());
  }
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoFailure("read error on " + path.string());
  }
  return data;
}

inline void write_file(const std::filesystem::path & path, std::span<const std::uint8_t> data)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoFailure("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char *>(data.data()), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) {
    throw IoFailure("write error on " + path.string());
  }
}

inline GrayImage load_pgm(const std::filesystem::path & path)
{
  return read_pgm(read_file(path));
}

inline void save_pgm(const std::filesystem::path & path, const GrayImage & img)
{
  write_file(path, write_pgm(img));
}

}  // namespace livseg

#endif  // LIVSEG__PNM_HPP_
