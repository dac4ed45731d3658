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

#ifndef LIVSEG__CONTOUR_HPP_
#define LIVSEG__CONTOUR_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "livseg/error.hpp"
#include "livseg/image.hpp"
#include "livseg/pnm.hpp"

namespace livseg
{

/// |Gx| + |Gy| per pixel.
using GradientImage = Raster<std::int32_t>;

/**
 * @brief Sobel gradient magnitude in the L1 norm.
 *
 * Gx = [[-1 0 1] [-2 0 2] [-1 0 1]], Gy its transpose. Border pixels use
 * replicate padding.
 */
inline GradientImage sobel_magnitude(const GrayImage & img)
{
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  const auto px = img.pixels();
  std::vector<std::int32_t> mag(px.size());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    const std::ptrdiff_t ym = std::max<std::ptrdiff_t>(y - 1, 0) * w;
    const std::ptrdiff_t y0 = y * w;
    const std::ptrdiff_t yp = std::min<std::ptrdiff_t>(y + 1, h - 1) * w;
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      const std::ptrdiff_t xm = std::max<std::ptrdiff_t>(x - 1, 0);
      const std::ptrdiff_t xp = std::min<std::ptrdiff_t>(x + 1, w - 1);
      const std::int32_t a = px[ym + xm], b = px[ym + x], c = px[ym + xp];
      const std::int32_t d = px[y0 + xm], f = px[y0 + xp];
      const std::int32_t g = px[yp + xm], k = px[yp + x], l = px[yp + xp];
      const std::int32_t gx = (c + 2 * f + l) - (a + 2 * d + g);
      const std::int32_t gy = (g + 2 * k + l) - (a + 2 * b + c);
      mag[y0 + x] = std::abs(gx) + std::abs(gy);
    }
  }
  return GradientImage(img.width(), img.height(), std::move(mag));
}

/// Inner contour: mask pixels where the Sobel response of the 0/255
/// rendering is nonzero.
inline BinaryMask extract_contour(const BinaryMask & mask)
{
  const GradientImage g = sobel_magnitude(mask_to_image(mask));
  std::vector<std::uint8_t> bits(mask.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = mask[i] && g[i] > 0;
  }
  return BinaryMask(mask.width(), mask.height(), std::move(bits));
}

/// Row-major RGB image, three bytes per pixel.
class Overlay
{
public:
  Overlay() = default;

  Overlay(std::size_t width, std::size_t height, std::vector<std::uint8_t> rgb)
  : width_{width}, height_{height}, rgb_(std::move(rgb))
  {
    if (width_ == 0 || height_ == 0 || rgb_.size() != width_ * height_ * 3) {
      throw std::invalid_argument("overlay buffer does not match its dimensions");
    }
  }

  std::size_t width() const {return width_;}
  std::size_t height() const {return height_;}
  std::span<const std::uint8_t> rgb() const {return rgb_;}

  std::array<std::uint8_t, 3> at(std::size_t x, std::size_t y) const
  {
    const std::size_t i = 3 * (y * width_ + x);
    return {rgb_[i], rgb_[i + 1], rgb_[i + 2]};
  }

  friend bool operator==(const Overlay &, const Overlay &) = default;

private:
  std::size_t width_{0};
  std::size_t height_{0};
  std::vector<std::uint8_t> rgb_;
};

/// Gray replica of @p original with contour pixels painted pure red.
inline Overlay overlay(const GrayImage & original, const BinaryMask & contour)
{
  if (!original.same_shape(contour)) {
    throw DimensionMismatch("overlay: original and contour sizes differ");
  }
  const GrayImage gray = to_8bit(original);
  std::vector<std::uint8_t> rgb(gray.size() * 3);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    if (contour[i]) {
      rgb[3 * i] = 255;
      rgb[3 * i + 1] = 0;
      rgb[3 * i + 2] = 0;
    } else {
      const auto v = static_cast<std::uint8_t>(gray[i]);
      rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = v;
    }
  }
  return Overlay(gray.width(), gray.height(), std::move(rgb));
}

/// Binary PPM (P6), maxval 255.
inline Bytes write_ppm(const Overlay & o)
{
  const std::string header = pnm_impl::header_text('6', o.width(), o.height(), 255);
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), o.rgb().begin(), o.rgb().end());
  return out;
}

/// Decode an 8-bit binary PPM (P6).
inline Overlay read_ppm(std::span<const std::uint8_t> bytes)
{
  const PnmHeader h = parse_pnm_header(bytes);
  if (h.kind != '6') {
    throw MalformedHeader("expected P6 magic");
  }
  if (h.maxval != 255) {
    throw UnsupportedMaxval("only maxval 255 PPM is supported");
  }
  const std::size_t n = h.width * h.height * 3;
  if (bytes.size() - h.raster_offset < n) {
    throw TruncatedData("PPM raster is shorter than declared");
  }
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(h.raster_offset);
  return Overlay(h.width, h.height, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(n)));
}

}  // namespace livseg

#endif  // LIVSEG__CONTOUR_HPP_
