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

#ifndef LIVSEG__HISTOGRAM_HPP_
#define LIVSEG__HISTOGRAM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "livseg/error.hpp"
#include "livseg/image.hpp"

namespace livseg
{

/// Intensity counts on the 8-bit axis.
struct Histogram
{
  std::array<std::uint64_t, 256> bins{};
  std::uint64_t total{0};
};

/**
 * @brief Inclusive intensity interval [s1, s2] delimiting liver tissue.
 *
 * Pixels below s1 are cut by the left threshold, pixels above s2 by the
 * right one.
 */
class ThresholdPair
{
public:
  constexpr ThresholdPair() = default;

  ThresholdPair(int s1, int s2)
  {
    if (s1 < 0 || s2 > 255) {
      throw InvalidBand("thresholds must lie in [0, 255]");
    }
    if (s1 > s2) {
      throw InvalidBand("s1 must be ≤ s2");
    }
    s1_ = static_cast<std::uint8_t>(s1);
    s2_ = static_cast<std::uint8_t>(s2);
  }

  constexpr int s1() const {return s1_;}
  constexpr int s2() const {return s2_;}
  constexpr bool contains(int v) const {return v >= s1_ && v <= s2_;}

  friend constexpr bool operator==(const ThresholdPair &, const ThresholdPair &) = default;

private:
  // uncalibrated default for 8-bit soft tissue
  std::uint8_t s1_{90};
  std::uint8_t s2_{150};
};

inline Histogram compute_histogram(const GrayImage & img)
{
  if (img.max_value() > 255) {
    throw std::invalid_argument("histogram expects an 8-bit image");
  }
  Histogram h;
  for (const auto v : img.pixels()) {
    ++h.bins[v];
  }
  h.total = img.size();
  return h;
}

/// Foreground iff s1 <= intensity <= s2.
inline BinaryMask band_threshold(const GrayImage & img, ThresholdPair t)
{
  std::vector<std::uint8_t> bits(img.size());
  const int lo = t.s1();
  const int hi = t.s2();
  const auto px = img.pixels();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = px[i] >= lo && px[i] <= hi;
  }
  return BinaryMask(img.width(), img.height(), std::move(bits));
}

/// "intensity,count" rows, one per 8-bit level.
inline std::string histogram_csv(const Histogram & h)
{
  std::string out;
  out.reserve(256 * 8);
  for (std::size_t v = 0; v < h.bins.size(); ++v) {
    out += std::to_string(v);
    out += ',';
    out += std::to_string(h.bins[v]);
    out += '\n';
  }
  return out;
}

}  // namespace livseg

#endif  // LIVSEG__HISTOGRAM_HPP_
