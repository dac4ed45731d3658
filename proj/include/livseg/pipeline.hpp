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

#ifndef LIVSEG__PIPELINE_HPP_
#define LIVSEG__PIPELINE_HPP_

#include <zlib.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "livseg/components.hpp"
#include "livseg/contour.hpp"
#include "livseg/error.hpp"
#include "livseg/filtering.hpp"
#include "livseg/histogram.hpp"
#include "livseg/image.hpp"
#include "livseg/pnm.hpp"

namespace livseg
{

/// Every stage parameter of the segmentation chain.
struct PipelineConfig
{
  ThresholdPair thresholds{};
  int median_window{3};
  StructuringElement element{ElementShape::Square, 2};
  /// GCC smaller than this fraction of the slice is rejected.
  double min_area_fraction{0.02};

  void validate() const
  {
    if (median_window < 3 || median_window > 9 || median_window % 2 == 0) {
      throw InvalidWindow("median window must be one of 3, 5, 7, 9");
    }
    if (!(min_area_fraction >= 0.0 && min_area_fraction < 1.0)) {
      throw InvalidConfig("min_area_fraction must lie in [0, 1)");
    }
  }

  friend bool operator==(const PipelineConfig &, const PipelineConfig &) = default;
};

inline nlohmann::json to_json(const PipelineConfig & cfg)
{
  return {
    {"s1", cfg.thresholds.s1()},
    {"s2", cfg.thresholds.s2()},
    {"median_window", cfg.median_window},
    {"se_shape", to_string(cfg.element.shape())},
    {"se_radius", cfg.element.radius()},
    {"min_area_fraction", cfg.min_area_fraction},
  };
}

/// Names of the dumped stages, in pipeline order.
inline constexpr std::array<const char *, 7> kStageNames{
  "stage_a", "stage_b", "stage_c", "stage_d", "stage_e", "stage_f", "stage_g"};

/**
 * Images produced by one run:
 * (a) original, (b) band threshold, (c) median filtered, (d) greatest
 * connected component, (e) closing, (f) contour, (g) contour overlay.
 */
struct SegmentationResult
{
  GrayImage original;
  BinaryMask thresholded;
  BinaryMask filtered;
  BinaryMask gcc;
  BinaryMask closed;
  BinaryMask contour;
  Overlay overlay;
  /// Pixel count of the GCC, stage (d).
  std::size_t area_pixels{0};

  const BinaryMask & liver_mask() const {return closed;}

  friend bool operator==(const SegmentationResult &, const SegmentationResult &) = default;
};

/// No acceptable liver candidate. Carries stages (a)-(c) for diagnosis.
class LiverNotFound : public Error
{
public:
  LiverNotFound(const std::string & what, GrayImage original, BinaryMask thresholded,
    BinaryMask filtered)
  : Error(what), original_(std::move(original)), thresholded_(std::move(thresholded)),
    filtered_(std::move(filtered)) {}

  const GrayImage & original() const {return original_;}
  const BinaryMask & thresholded() const {return thresholded_;}
  const BinaryMask & filtered() const {return filtered_;}

private:
  GrayImage original_;
  BinaryMask thresholded_;
  BinaryMask filtered_;
};

/// Run the full chain. Throws LiverNotFound when (c) is empty or the GCC
/// covers less than min_area_fraction of the slice.
inline SegmentationResult run_pipeline(const GrayImage & img, const PipelineConfig & cfg)
{
  cfg.validate();
  if (img.max_value() != 255) {
    throw InvalidConfig("pipeline expects an 8-bit image (max_value 255)");
  }
  SegmentationResult r;
  r.original = img;
  r.thresholded = band_threshold(img, cfg.thresholds);
  r.filtered = median_filter(r.thresholded, cfg.median_window);

  const Labeling labeling = label_components(r.filtered);
  if (labeling.count == 0) {
    throw LiverNotFound("no foreground after median filtering", r.original, r.thresholded,
            r.filtered);
  }
  const ComponentSizeTable sizes = component_sizes(labeling);
  const Label gcc = largest_label(sizes);
  r.area_pixels = sizes[gcc - 1];
  const double floor_area = cfg.min_area_fraction * static_cast<double>(img.size());
  if (static_cast<double>(r.area_pixels) < floor_area) {
    throw LiverNotFound(
            "largest component has " + std::to_string(r.area_pixels) +
            " pixels, below the minimum of " + std::to_string(floor_area),
            r.original, r.thresholded, r.filtered);
  }
  r.gcc = largest_component(labeling.labels, sizes);
  r.closed = close(r.gcc, cfg.element);
  r.contour = extract_contour(r.closed);
  r.overlay = overlay(r.original, r.contour);
  return r;
}

namespace pipeline_impl
{

inline std::uint32_t crc32_of(std::span<const std::uint8_t> data)
{
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t chunk = std::min<std::size_t>(data.size() - pos, 1u << 30);
    crc = ::crc32(crc, data.data() + pos, static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

struct EncodedStage
{
  std::string file_name;
  Bytes bytes;
  std::size_t raster_offset;
};

inline EncodedStage encode(const char * name, const GrayImage & img)
{
  Bytes b = write_pgm(img);
  const std::size_t off = parse_pnm_header(b).raster_offset;
  return {std::string(name) + ".pgm", std::move(b), off};
}

inline EncodedStage encode(const char * name, const BinaryMask & mask)
{
  return encode(name, mask_to_image(mask));
}

inline EncodedStage encode(const char * name, const Overlay & o)
{
  Bytes b = write_ppm(o);
  const std::size_t off = parse_pnm_header(b).raster_offset;
  return {std::string(name) + ".ppm", std::move(b), off};
}

inline void ensure_directory(const std::filesystem::path & dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoFailure("cannot create output directory " + dir.string() +
            (ec ? ": " + ec.message() : std::string()));
  }
}

inline void remove_quietly(const std::filesystem::path & p)
{
  std::error_code ec;
  std::filesystem::remove(p, ec);
}

}  // namespace pipeline_impl

/// Stage files in order (a)-(g), as written by dump_stages.
inline std::vector<pipeline_impl::EncodedStage> encode_stages(const SegmentationResult & r)
{
  using pipeline_impl::encode;
  return {
    encode(kStageNames[0], r.original),
    encode(kStageNames[1], r.thresholded),
    encode(kStageNames[2], r.filtered),
    encode(kStageNames[3], r.gcc),
    encode(kStageNames[4], r.closed),
    encode(kStageNames[5], r.contour),
    encode(kStageNames[6], r.overlay),
  };
}

/// result.json body: area, configuration echo, CRC-32 of every stage raster.
inline nlohmann::json result_json(const SegmentationResult & r, const PipelineConfig & cfg)
{
  nlohmann::json stages = nlohmann::json::array();
  for (const auto & s : encode_stages(r)) {
    const std::span<const std::uint8_t> raster(s.bytes);
    stages.push_back({
        {"name", s.file_name.substr(0, s.file_name.find('.'))},
        {"crc32", pipeline_impl::crc32_of(raster.subspan(s.raster_offset))}});
  }
  return {{"area_pixels", r.area_pixels}, {"config", to_json(cfg)}, {"stages", stages}};
}

/**
 * @brief Write stage_a.pgm ... stage_f.pgm, stage_g.ppm and result.json.
 *
 * result.json is written last through a temporary file, so it exists only
 * when every stage file was written. Returns the seven stage paths in order.
 */
inline std::vector<std::filesystem::path> dump_stages(
  const SegmentationResult & r, const PipelineConfig & cfg, const std::filesystem::path & dir)
{
  pipeline_impl::ensure_directory(dir);
  const auto final_json = dir / "result.json";
  pipeline_impl::remove_quietly(final_json);

  std::vector<std::filesystem::path> paths;
  for (const auto & s : encode_stages(r)) {
    paths.push_back(dir / s.file_name);
    write_file(paths.back(), s.bytes);
  }
  const std::string text = result_json(r, cfg).dump(2) + "\n";
  const auto tmp = dir / "result.json.tmp";
  try {
    write_file(tmp, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
    std::filesystem::rename(tmp, final_json);
  } catch (const std::filesystem::filesystem_error & e) {
    pipeline_impl::remove_quietly(tmp);
    throw IoFailure(std::string("cannot finalize result.json: ") + e.what());
  } catch (...) {
    pipeline_impl::remove_quietly(tmp);
    throw;
  }
  return paths;
}

/// Write stages (a)-(c) of a failed run and clear any later stages or
/// result.json left by a previous run in @p dir.
inline std::vector<std::filesystem::path> dump_diagnostic_stages(
  const LiverNotFound & failure, const std::filesystem::path & dir)
{
  using pipeline_impl::encode;
  pipeline_impl::ensure_directory(dir);
  pipeline_impl::remove_quietly(dir / "result.json");
  for (std::size_t i = 3; i < kStageNames.size(); ++i) {
    pipeline_impl::remove_quietly(dir / (std::string(kStageNames[i]) + ".pgm"));
    pipeline_impl::remove_quietly(dir / (std::string(kStageNames[i]) + ".ppm"));
  }
  const std::array stages{
    encode(kStageNames[0], failure.original()),
    encode(kStageNames[1], failure.thresholded()),
    encode(kStageNames[2], failure.filtered())};
  std::vector<std::filesystem::path> paths;
  for (const auto & s : stages) {
    paths.push_back(dir / s.file_name);
    write_file(paths.back(), s.bytes);
  }
  return paths;
}

}  // namespace livseg

#endif  // LIVSEG__PIPELINE_HPP_
