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

#ifndef LIVSEG__CALIBRATION_HPP_
#define LIVSEG__CALIBRATION_HPP_

#include <cstddef>
#include <vector>

#include "livseg/error.hpp"
#include "livseg/evaluation.hpp"
#include "livseg/histogram.hpp"
#include "livseg/parallel.hpp"
#include "livseg/pipeline.hpp"

namespace livseg
{

struct Calibration
{
  ThresholdPair thresholds;
  double mean_dice{0.0};
};

/// Ordering used to pick the winner: higher mean Dice, then smaller s1,
/// then smaller s2.
inline bool better_calibration(const Calibration & a, const Calibration & b)
{
  if (a.mean_dice != b.mean_dice) {
    return a.mean_dice > b.mean_dice;
  }
  if (a.thresholds.s1() != b.thresholds.s1()) {
    return a.thresholds.s1() < b.thresholds.s1();
  }
  return a.thresholds.s2() < b.thresholds.s2();
}

/// All pairs s1 <= s2 with both on the grid {0, step, 2 step, ...} <= 255.
inline std::vector<ThresholdPair> threshold_grid(int step)
{
  if (step < 1 || step > 64) {
    throw InvalidConfig("calibration step must lie in [1, 64]");
  }
  std::vector<ThresholdPair> grid;
  for (int s1 = 0; s1 <= 255; s1 += step) {
    for (int s2 = s1; s2 <= 255; s2 += step) {
      grid.emplace_back(s1, s2);
    }
  }
  return grid;
}

/**
 * @brief Exhaustive grid search for the band maximizing mean Dice.
 *
 * Every candidate pair is scored by running the whole pipeline (with the
 * remaining parameters taken from @p base) on each sample. LiverNotFound
 * counts as Dice 0.
 */
inline Calibration calibrate_thresholds(
  const std::vector<Sample> & samples, int step, const PipelineConfig & base = {},
  std::size_t threads = 1)
{
  if (samples.empty()) {
    throw EmptySampleSet("calibration needs at least one sample");
  }
  const std::vector<ThresholdPair> grid = threshold_grid(step);
  std::vector<Calibration> scored(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
      PipelineConfig cfg = base;
      cfg.thresholds = grid[i];
      double sum = 0.0;
      for (const auto & s : samples) {
        sum += evaluate_sample(s, cfg).dice;
      }
      scored[i] = {grid[i], sum / static_cast<double>(samples.size())};
    });
  Calibration best = scored.front();
  for (const auto & c : scored) {
    if (better_calibration(c, best)) {
      best = c;
    }
  }
  return best;
}

}  // namespace livseg

#endif  // LIVSEG__CALIBRATION_HPP_
