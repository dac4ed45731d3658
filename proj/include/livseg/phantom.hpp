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

#ifndef LIVSEG__PHANTOM_HPP_
#define LIVSEG__PHANTOM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "livseg/components.hpp"
#include "livseg/error.hpp"
#include "livseg/filtering.hpp"
#include "livseg/histogram.hpp"
#include "livseg/image.hpp"

namespace livseg
{

/// Synthetic axial slice with a known liver mask.
struct Phantom
{
  GrayImage image;
  BinaryMask truth;
  std::uint64_t seed{0};
  double noise_sigma{0.0};
  ThresholdPair band;
};

namespace phantom_impl
{

// Sampling is done by hand on top of the raw engine output because the
// standard distributions are implementation-defined; phantom bytes must not
// depend on the standard library in use.
class Sampler
{
public:
  explicit Sampler(std::uint64_t seed) : engine_{seed} {}

  /// Uniform in [0, 1).
  double uniform() {return static_cast<double>(engine_() >> 11) * 0x1.0p-53;}

  double uniform(double lo, double hi) {return lo + (hi - lo) * uniform();}

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi)
  {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  std::mt19937_64 engine_;
  double spare_{0.0};
  bool has_spare_{false};
};

// Rotated ellipse whose normalized radius is modulated by low harmonics.
// Amplitudes stay small enough for the outline to remain convex.
struct Blob
{
  double cx, cy, a, b, angle;
  double amp2{0.0}, phase2{0.0}, amp3{0.0}, phase3{0.0};

  bool contains(double x, double y) const
  {
    const double dx = x - cx;
    const double dy = y - cy;
    const double u = (dx * std::cos(angle) + dy * std::sin(angle)) / a;
    const double v = (-dx * std::sin(angle) + dy * std::cos(angle)) / b;
    const double rho = std::sqrt(u * u + v * v);
    const double phi = std::atan2(v, u);
    const double limit = 1.0 + amp2 * std::cos(2.0 * phi + phase2) +
      amp3 * std::cos(3.0 * phi + phase3);
    return rho <= limit;
  }
};

struct Levels
{
  int air, tissue, organ;
};

// Pick out-of-band intensities: air at 0 whenever 0 is outside the band,
// soft tissue in the middle of the wider free side, bright or dark organs on
// the other side when it exists.
inline Levels out_of_band_levels(ThresholdPair band)
{
  const int below = band.s1();        // values 0 .. s1-1
  const int above = 255 - band.s2();   // values s2+1 .. 255
  if (below == 0 && above == 0) {
    throw InvalidBand("band covers every intensity; no out-of-band level is left");
  }
  const int dark_mid = (band.s1() - 1) / 2;
  const int bright_mid = band.s2() + 1 + (above - 1) / 2;
  const int air = below > 0 ? 0 : 255;
  if (below >= above) {
    return {air, dark_mid, above > 0 ? bright_mid : std::max(0, dark_mid / 2)};
  }
  return {air, bright_mid, below > 0 ? dark_mid : std::min(255, (bright_mid + 256) / 2)};
}

}  // namespace phantom_impl

/**
 * @brief Build a seeded synthetic slice.
 *
 * The liver is a large convex blob in the left half of the body; a smaller
 * in-band distractor sits in the right half. Every other structure uses
 * intensities outside the band. Gaussian noise of @p noise_sigma is added
 * and clamped to [0, 255]. The truth mask marks the liver exactly.
 */
inline Phantom make_phantom(
  std::size_t width, std::size_t height, std::uint64_t seed, double noise_sigma,
  ThresholdPair band)
{
  if (width < 64 || height < 64) {
    throw TooSmall("phantom must be at least 64x64");
  }
  if (!(noise_sigma >= 0.0)) {
    throw InvalidConfig("noise sigma must be non-negative");
  }
  using namespace phantom_impl;
  const Levels lv = out_of_band_levels(band);
  Sampler rng(seed);
  const double W = static_cast<double>(width);
  const double H = static_cast<double>(height);

  const Blob body{0.5 * W, 0.5 * H, 0.46 * W, 0.40 * H, 0.0};
  const Blob spine{0.5 * W, 0.78 * H, 0.06 * W, 0.06 * H, 0.0};
  const Blob kidney{
    0.63 * W, 0.64 * H, 0.05 * W * rng.uniform(0.9, 1.1), 0.08 * H * rng.uniform(0.9, 1.1),
    rng.uniform(-0.3, 0.3)};
  const Blob spleen{
    0.74 * W + rng.uniform(-0.02, 0.02) * W, 0.40 * H + rng.uniform(-0.03, 0.03) * H,
    0.07 * W * rng.uniform(0.9, 1.1), 0.10 * H * rng.uniform(0.9, 1.1),
    rng.uniform(-0.4, 0.4), rng.uniform(0.0, 0.04), rng.uniform(0.0, 6.3)};
  const Blob liver{
    0.30 * W + rng.uniform(-0.02, 0.02) * W, 0.45 * H + rng.uniform(-0.03, 0.03) * H,
    0.19 * W * rng.uniform(0.92, 1.08), 0.17 * H * rng.uniform(0.92, 1.08),
    rng.uniform(-0.4, 0.4), rng.uniform(0.0, 0.05), rng.uniform(0.0, 6.3),
    rng.uniform(0.0, 0.03), rng.uniform(0.0, 6.3)};

  enum Region : std::uint8_t {Air, Tissue, Organ, Spleen, Liver};
  std::vector<std::uint8_t> region(width * height, Air);
  std::vector<std::uint8_t> liver_bits(width * height, 0);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double px = static_cast<double>(x) + 0.5;
      const double py = static_cast<double>(y) + 0.5;
      const std::size_t i = y * width + x;
      if (liver.contains(px, py)) {
        liver_bits[i] = 1;
      } else if (spleen.contains(px, py)) {
        region[i] = Spleen;
      } else if (spine.contains(px, py) || kidney.contains(px, py)) {
        region[i] = Organ;
      } else if (body.contains(px, py)) {
        region[i] = Tissue;
      }
    }
  }

  // Rasterized outlines carry one-pixel staircase tips that a 3x3 majority
  // vote would shave off. Smooth the outline until it is a fixed point of the
  // default despeckling and closing stages and a single 4-connected piece;
  // pixels dropped here fall back to soft tissue.
  BinaryMask truth(width, height, std::move(liver_bits));
  for (int iter = 0; iter < 64; ++iter) {
    BinaryMask next = largest_component(
      close(median_filter(truth, 3), StructuringElement::square(2)));
    if (next == truth) {
      break;
    }
    truth = std::move(next);
  }
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (truth[i]) {
      region[i] = Liver;
    } else if (region[i] == Air && body.contains(
        static_cast<double>(i % width) + 0.5, static_cast<double>(i / width) + 0.5))
    {
      region[i] = Tissue;
    }
  }

  std::vector<std::uint16_t> px(width * height);
  for (std::size_t i = 0; i < px.size(); ++i) {
    int base = 0;
    switch (region[i]) {
      case Air: base = lv.air; break;
      case Tissue: base = lv.tissue; break;
      case Organ: base = lv.organ; break;
      case Spleen:
      case Liver: base = rng.uniform_int(band.s1(), band.s2()); break;
    }
    double v = base;
    if (noise_sigma > 0.0) {
      v += noise_sigma * rng.normal();
    }
    px[i] = static_cast<std::uint16_t>(std::clamp(std::lround(v), 0L, 255L));
  }

  return Phantom{GrayImage(width, height, std::move(px), 255), std::move(truth), seed, noise_sigma,
    band};
}

}  // namespace livseg

#endif  // LIVSEG__PHANTOM_HPP_
