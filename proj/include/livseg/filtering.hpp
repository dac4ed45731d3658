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

#ifndef LIVSEG__FILTERING_HPP_
#define LIVSEG__FILTERING_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "livseg/error.hpp"
#include "livseg/image.hpp"

namespace livseg
{

enum class ElementShape
{
  Square,
  Cross
};

inline const char * to_string(ElementShape s)
{
  return s == ElementShape::Square ? "square" : "cross";
}

inline ElementShape parse_element_shape(const std::string & s)
{
  if (s == "square") {
    return ElementShape::Square;
  }
  if (s == "cross") {
    return ElementShape::Cross;
  }
  throw InvalidConfig("structuring element shape must be 'square' or 'cross', got '" + s + "'");
}

/// Centered, point-symmetric structuring element. A square of radius r is
/// (2r + 1) pixels wide; a cross is its horizontal and vertical center lines.
class StructuringElement
{
public:
  StructuringElement() = default;

  StructuringElement(ElementShape shape, int radius)
  : shape_{shape}, radius_{radius}
  {
    if (radius < 1) {
      throw InvalidConfig("structuring element radius must be >= 1");
    }
  }

  static StructuringElement square(int radius) {return {ElementShape::Square, radius};}
  static StructuringElement cross(int radius) {return {ElementShape::Cross, radius};}

  ElementShape shape() const {return shape_;}
  int radius() const {return radius_;}

  friend bool operator==(const StructuringElement &, const StructuringElement &) = default;

private:
  ElementShape shape_{ElementShape::Square};
  int radius_{2};
};

namespace filtering_impl
{

enum class Axis {Row, Column};
enum class Reduce {Any, All};

// One-dimensional running-count pass. Window cells falling outside the
// image are dropped, so "All" only requires the in-bounds cells to be set.
inline std::vector<std::uint8_t> line_pass(
  const std::vector<std::uint8_t> & in, std::size_t w, std::size_t h,
  int radius, Axis axis, Reduce op)
{
  std::vector<std::uint8_t> out(in.size());
  const std::size_t lines = axis == Axis::Row ? h : w;
  const std::size_t len = axis == Axis::Row ? w : h;
  const std::size_t stride = axis == Axis::Row ? 1 : w;
  const auto r = static_cast<std::ptrdiff_t>(radius);
  std::vector<std::uint32_t> prefix(len + 1);
  for (std::size_t line = 0; line < lines; ++line) {
    const std::size_t base = axis == Axis::Row ? line * w : line;
    prefix[0] = 0;
    for (std::size_t i = 0; i < len; ++i) {
      prefix[i + 1] = prefix[i] + in[base + i * stride];
    }
    const auto n = static_cast<std::ptrdiff_t>(len);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - r);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + r);
      const std::uint32_t count = prefix[hi + 1] - prefix[lo];
      const bool on = op == Reduce::Any ?
        count > 0 :
        count == static_cast<std::uint32_t>(hi - lo + 1);
      out[base + static_cast<std::size_t>(i) * stride] = on;
    }
  }
  return out;
}

inline BinaryMask morphology(const BinaryMask & mask, const StructuringElement & se, Reduce op)
{
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  const auto & in = mask.buffer();
  const int r = se.radius();
  if (se.shape() == ElementShape::Square) {
    auto rows = line_pass(in, w, h, r, Axis::Row, op);
    return BinaryMask(w, h, line_pass(rows, w, h, r, Axis::Column, op));
  }
  auto rows = line_pass(in, w, h, r, Axis::Row, op);
  const auto cols = line_pass(in, w, h, r, Axis::Column, op);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = op == Reduce::Any ? (rows[i] | cols[i]) : (rows[i] & cols[i]);
  }
  return BinaryMask(w, h, std::move(rows));
}

}  // namespace filtering_impl

/**
 * @brief Binary median (majority vote) over a window x window neighborhood.
 *
 * Coordinates outside the image are clamped to the nearest edge pixel
 * (replicate padding). The window side must be 3, 5, 7 or 9.
 */
inline BinaryMask median_filter(const BinaryMask & mask, int window)
{
  if (window < 3 || window > 9 || window % 2 == 0) {
    throw InvalidWindow("median window must be one of 3, 5, 7, 9; got " + std::to_string(window));
  }
  const auto w = static_cast<std::ptrdiff_t>(mask.width());
  const auto h = static_cast<std::ptrdiff_t>(mask.height());
  const std::ptrdiff_t r = window / 2;
  const auto & in = mask.buffer();

  // horizontal sums with clamped columns, then vertical sums with clamped rows
  std::vector<std::uint8_t> rowsum(in.size());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    const std::uint8_t * row = in.data() + y * w;
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      int s = 0;
      for (std::ptrdiff_t dx = -r; dx <= r; ++dx) {
        s += row[std::clamp<std::ptrdiff_t>(x + dx, 0, w - 1)];
      }
      rowsum[y * w + x] = static_cast<std::uint8_t>(s);
    }
  }
  const int majority = window * window / 2;
  std::vector<std::uint8_t> out(in.size());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      int s = 0;
      for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
        s += rowsum[std::clamp<std::ptrdiff_t>(y + dy, 0, h - 1) * w + x];
      }
      out[y * w + x] = s > majority;
    }
  }
  return BinaryMask(mask.width(), mask.height(), std::move(out));
}

/// Pixel is set iff any in-bounds pixel under the element centered there is set.
inline BinaryMask dilate(const BinaryMask & mask, const StructuringElement & se)
{
  return filtering_impl::morphology(mask, se, filtering_impl::Reduce::Any);
}

/// Pixel is set iff every in-bounds pixel under the element centered there is set.
inline BinaryMask erode(const BinaryMask & mask, const StructuringElement & se)
{
  return filtering_impl::morphology(mask, se, filtering_impl::Reduce::All);
}

/// Morphological closing: erode(dilate(mask)). Fills holes smaller than the element.
inline BinaryMask close(const BinaryMask & mask, const StructuringElement & se)
{
  return erode(dilate(mask, se), se);
}

}  // namespace livseg

#endif  // LIVSEG__FILTERING_HPP_
