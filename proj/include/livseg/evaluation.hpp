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

#ifndef LIVSEG__EVALUATION_HPP_
#define LIVSEG__EVALUATION_HPP_

#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "livseg/error.hpp"
#include "livseg/image.hpp"
#include "livseg/parallel.hpp"
#include "livseg/pipeline.hpp"

namespace livseg
{

namespace evaluation_impl
{

struct Overlap
{
  std::size_t a{0}, b{0}, both{0};
};

inline Overlap count_overlap(const BinaryMask & a, const BinaryMask & b)
{
  if (!a.same_shape(b)) {
    throw DimensionMismatch("masks differ in size");
  }
  Overlap o;
  for (std::size_t i = 0; i < a.size(); ++i) {
    o.a += a[i];
    o.b += b[i];
    o.both += a[i] & b[i];
  }
  return o;
}

}  // namespace evaluation_impl

/// 2|A n B| / (|A| + |B|); 1 when both masks are empty.
inline double dice(const BinaryMask & a, const BinaryMask & b)
{
  const auto o = evaluation_impl::count_overlap(a, b);
  if (o.a + o.b == 0) {
    return 1.0;
  }
  return 2.0 * static_cast<double>(o.both) / static_cast<double>(o.a + o.b);
}

/// |A n B| / |A u B|; 1 when both masks are empty.
inline double jaccard(const BinaryMask & a, const BinaryMask & b)
{
  const auto o = evaluation_impl::count_overlap(a, b);
  const std::size_t uni = o.a + o.b - o.both;
  if (uni == 0) {
    return 1.0;
  }
  return static_cast<double>(o.both) / static_cast<double>(uni);
}

enum class Verdict {Good, Average, Failed};

inline const char * to_string(Verdict v)
{
  switch (v) {
    case Verdict::Good: return "good";
    case Verdict::Average: return "average";
    case Verdict::Failed: return "failed";
  }
  return "failed";
}

/// good >= 0.9 > average >= 0.7 > failed
inline Verdict verdict_for(double dice_score)
{
  if (dice_score >= 0.9) {
    return Verdict::Good;
  }
  if (dice_score >= 0.7) {
    return Verdict::Average;
  }
  return Verdict::Failed;
}

/// A slice with its expert mask.
struct Sample
{
  std::string id;
  GrayImage image;
  BinaryMask truth;
};

struct EvalRow
{
  std::string id;
  double dice{0.0};
  double jaccard{0.0};
  std::size_t area_auto{0};
  std::size_t area_truth{0};
  Verdict verdict{Verdict::Failed};
  bool liver_not_found{false};
};

struct EvalReport
{
  std::vector<EvalRow> rows;
  double mean_dice{0.0};
  double mean_jaccard{0.0};
  /// Rows where the pipeline raised LiverNotFound.
  std::size_t n_failed{0};
};

/// Score a single slice. LiverNotFound yields a failed row with zero overlap.
inline EvalRow evaluate_sample(const Sample & s, const PipelineConfig & cfg)
{
  EvalRow row;
  row.id = s.id;
  row.area_truth = s.truth.popcount();
  try {
    const SegmentationResult r = run_pipeline(s.image, cfg);
    const BinaryMask & liver = r.liver_mask();
    row.dice = dice(liver, s.truth);
    row.jaccard = jaccard(liver, s.truth);
    row.area_auto = liver.popcount();
    row.verdict = verdict_for(row.dice);
  } catch (const LiverNotFound &) {
    row.liver_not_found = true;
    row.verdict = Verdict::Failed;
  }
  return row;
}

/**
 * @brief Run the pipeline on every sample and aggregate overlap scores.
 *
 * Samples are processed on up to @p threads workers (0 = hardware
 * concurrency); rows keep input order and aggregates are summed in that
 * order, so the report does not depend on the schedule.
 */
inline EvalReport evaluate_corpus(
  const std::vector<Sample> & samples, const PipelineConfig & cfg, std::size_t threads = 1)
{
  if (samples.empty()) {
    throw EmptyCorpus("corpus contains no samples");
  }
  cfg.validate();
  EvalReport report;
  report.rows.resize(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
      report.rows[i] = evaluate_sample(samples[i], cfg);
    });
  double sum_dice = 0.0;
  double sum_jaccard = 0.0;
  for (const auto & row : report.rows) {
    sum_dice += row.dice;
    sum_jaccard += row.jaccard;
    report.n_failed += row.liver_not_found;
  }
  const auto n = static_cast<double>(report.rows.size());
  report.mean_dice = sum_dice / n;
  report.mean_jaccard = sum_jaccard / n;
  return report;
}

inline nlohmann::json to_json(const EvalReport & report)
{
  nlohmann::json rows = nlohmann::json::array();
  for (const auto & r : report.rows) {
    rows.push_back({
        {"id", r.id},
        {"dice", r.dice},
        {"jaccard", r.jaccard},
        {"area_auto", r.area_auto},
        {"area_truth", r.area_truth},
        {"verdict", to_string(r.verdict)}});
  }
  return {
    {"rows", rows},
    {"aggregate", {
        {"mean_dice", report.mean_dice},
        {"mean_jaccard", report.mean_jaccard},
        {"n_failed", report.n_failed}}}};
}

inline std::string to_csv(const EvalReport & report)
{
  std::string out = "id,dice,jaccard,area_auto,area_truth,verdict\n";
  char buf[64];
  for (const auto & r : report.rows) {
    out += r.id;
    std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,", r.dice, r.jaccard);
    out += buf;
    out += std::to_string(r.area_auto) + "," + std::to_string(r.area_truth) + "," +
      to_string(r.verdict) + "\n";
  }
  return out;
}

}  // namespace livseg

#endif  // LIVSEG__EVALUATION_HPP_
