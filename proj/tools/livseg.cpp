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

// livseg: batch front end for the liver segmentation chain.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 liver not found.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "livseg/livseg.hpp"

#ifndef LIVSEG_VERSION
#define LIVSEG_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLiverNotFound = 2;

/// Stage parameters as given on the command line; unset means "not given".
struct ConfigFlags
{
  std::optional<std::string> config_file;
  std::optional<int> s1, s2, median, se_radius;
  std::optional<std::string> se_shape;
  std::optional<double> min_area;

  void add_to(CLI::App & cmd)
  {
    cmd.add_option("--config", config_file, "key=value file (flags take precedence)");
    cmd.add_option("--s1", s1, "lower intensity threshold [0, 255]");
    cmd.add_option("--s2", s2, "upper intensity threshold [0, 255]");
    cmd.add_option("--median", median, "median window side (3, 5, 7, 9)");
    cmd.add_option("--se-radius", se_radius, "structuring element radius");
    cmd.add_option("--se-shape", se_shape, "structuring element shape (square, cross)");
    cmd.add_option("--min-area", min_area, "minimum GCC area as a fraction of the slice");
  }
};

std::map<std::string, std::string> read_config_file(const fs::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw livseg::IoFailure("cannot read config file " + path.string());
  }
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw livseg::InvalidConfig(
              path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

template<class T>
T parse_value(const std::string & key, const std::string & text)
{
  std::istringstream is(text);
  T v{};
  if (!(is >> v) || !(is >> std::ws).eof()) {
    throw livseg::InvalidConfig("config key '" + key + "' has invalid value '" + text + "'");
  }
  return v;
}

/// flags > config file > built-in defaults
livseg::PipelineConfig resolve_config(const ConfigFlags & flags)
{
  livseg::PipelineConfig def;
  int s1 = def.thresholds.s1();
  int s2 = def.thresholds.s2();
  int median = def.median_window;
  int se_radius = def.element.radius();
  std::string se_shape = livseg::to_string(def.element.shape());
  double min_area = def.min_area_fraction;

  if (flags.config_file) {
    for (const auto & [key, value] : read_config_file(*flags.config_file)) {
      if (key == "s1") {
        s1 = parse_value<int>(key, value);
      } else if (key == "s2") {
        s2 = parse_value<int>(key, value);
      } else if (key == "median") {
        median = parse_value<int>(key, value);
      } else if (key == "se_radius") {
        se_radius = parse_value<int>(key, value);
      } else if (key == "se_shape") {
        se_shape = value;
      } else if (key == "min_area") {
        min_area = parse_value<double>(key, value);
      } else if (key != "mean_dice") {
        throw livseg::InvalidConfig("unknown config key '" + key + "'");
      }
    }
  }
  s1 = flags.s1.value_or(s1);
  s2 = flags.s2.value_or(s2);
  median = flags.median.value_or(median);
  se_radius = flags.se_radius.value_or(se_radius);
  se_shape = flags.se_shape.value_or(se_shape);
  min_area = flags.min_area.value_or(min_area);

  livseg::PipelineConfig cfg;
  cfg.thresholds = livseg::ThresholdPair(s1, s2);
  cfg.median_window = median;
  cfg.element = livseg::StructuringElement(livseg::parse_element_shape(se_shape), se_radius);
  cfg.min_area_fraction = min_area;
  cfg.validate();
  return cfg;
}

/// One JSON line per run, appended to the manifest file.
struct RunManifest
{
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json config = nlohmann::json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void append(const fs::path & path, int exit_code) const
  {
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    nlohmann::json line = {
      {"command", command},
      {"inputs", inputs},
      {"config", config},
      {"version", LIVSEG_VERSION},
      {"duration_s", elapsed.count()},
      {"exit_code", exit_code}};
    std::error_code ec;
    if (path.has_parent_path()) {
      fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::app);
    if (!out) {
      std::cerr << "warning: cannot append run manifest to " << path << "\n";
      return;
    }
    out << line.dump() << "\n";
  }
};

struct CorpusPair
{
  std::string id;
  fs::path image;
  fs::path truth;
};

/// NAME.pgm with a sibling NAME_truth.pgm, sorted by NAME.
std::vector<CorpusPair> find_pairs(const fs::path & dir)
{
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw livseg::IoFailure("corpus directory " + dir.string() + " does not exist");
  }
  std::vector<CorpusPair> pairs;
  for (const auto & entry : fs::directory_iterator(dir)) {
    const fs::path p = entry.path();
    if (!entry.is_regular_file() || p.extension() != ".pgm") {
      continue;
    }
    const std::string stem = p.stem().string();
    if (stem.ends_with("_truth")) {
      continue;
    }
    const fs::path truth = dir / (stem + "_truth.pgm");
    if (fs::is_regular_file(truth)) {
      pairs.push_back({stem, p, truth});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto & a, const auto & b) {return a.id < b.id;});
  return pairs;
}

std::vector<livseg::Sample> load_corpus(const std::vector<CorpusPair> & pairs)
{
  std::vector<livseg::Sample> samples;
  samples.reserve(pairs.size());
  for (const auto & p : pairs) {
    livseg::GrayImage img = livseg::to_8bit(livseg::load_pgm(p.image));
    livseg::BinaryMask truth = livseg::image_to_mask(livseg::load_pgm(p.truth));
    if (!img.same_shape(truth)) {
      throw livseg::DimensionMismatch("truth mask for " + p.id + " differs in size");
    }
    samples.push_back({p.id, std::move(img), std::move(truth)});
  }
  return samples;
}

void write_text(const fs::path & path, const std::string & text)
{
  livseg::write_file(
    path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

fs::path directory_of(const fs::path & file)
{
  return file.has_parent_path() ? file.parent_path() : fs::path(".");
}

// Runs a command body, maps library errors onto exit codes and records the
// manifest line.
template<class Body>
int run_command(RunManifest & manifest, const std::optional<std::string> & manifest_path,
  const fs::path & default_manifest_dir, Body && body)
{
  int code = kExitError;
  try {
    code = body();
  } catch (const livseg::Error & e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  const fs::path target = manifest_path ? fs::path(*manifest_path) :
    default_manifest_dir / "manifest.jsonl";
  manifest.append(target, code);
  return code;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Automatic liver segmentation for axial CT slices"};
  app.set_version_flag("--version", LIVSEG_VERSION);
  app.require_subcommand(1);

  std::optional<std::string> manifest_path;
  app.add_option("--manifest", manifest_path,
    "append the run manifest here (default: manifest.jsonl next to the outputs)");

  // segment
  auto * segment = app.add_subcommand("segment", "segment one slice and dump every stage");
  std::string seg_input;
  std::string seg_out;
  ConfigFlags seg_flags;
  segment->add_option("input", seg_input, "input PGM")->required();
  segment->add_option("--out", seg_out, "output directory")->required();
  seg_flags.add_to(*segment);

  // phantom
  auto * phantom = app.add_subcommand("phantom", "write a synthetic slice and its truth mask");
  std::size_t ph_width = 512;
  std::size_t ph_height = 512;
  std::uint64_t ph_seed = 1;
  double ph_sigma = 0.0;
  int ph_s1 = 90;
  int ph_s2 = 150;
  std::string ph_out;
  phantom->add_option("--width", ph_width, "width in pixels (>= 64)")->capture_default_str();
  phantom->add_option("--height", ph_height, "height in pixels (>= 64)")->capture_default_str();
  phantom->add_option("--seed", ph_seed, "RNG seed")->capture_default_str();
  phantom->add_option("--sigma", ph_sigma, "Gaussian noise sigma")->capture_default_str();
  phantom->add_option("--s1", ph_s1, "lower band bound")->capture_default_str();
  phantom->add_option("--s2", ph_s2, "upper band bound")->capture_default_str();
  phantom->add_option("--out", ph_out, "output prefix (writes PREFIX.pgm, PREFIX_truth.pgm)")
  ->required();

  // eval
  auto * eval = app.add_subcommand("eval", "segment a corpus and score it against truth masks");
  std::string ev_corpus;
  std::optional<std::string> ev_out;
  std::optional<std::string> ev_stages;
  std::size_t ev_threads = 0;
  ConfigFlags ev_flags;
  eval->add_option("--corpus", ev_corpus, "directory of NAME.pgm / NAME_truth.pgm pairs")
  ->required();
  eval->add_option("--out", ev_out, "report directory (default: the corpus directory)");
  eval->add_option("--dump-stages", ev_stages, "also dump every stage to DIR/NAME/");
  eval->add_option("--threads", ev_threads, "worker threads, 0 = all cores")->capture_default_str();
  ev_flags.add_to(*eval);

  // calibrate
  auto * calibrate = app.add_subcommand("calibrate", "grid-search the threshold pair");
  std::string cal_corpus;
  int cal_step = 5;
  std::string cal_out;
  std::size_t cal_threads = 0;
  ConfigFlags cal_flags;
  calibrate->add_option("--corpus", cal_corpus, "directory of NAME.pgm / NAME_truth.pgm pairs")
  ->required();
  calibrate->add_option("--step", cal_step, "grid stride in [1, 64]")->capture_default_str();
  calibrate->add_option("--out", cal_out, "config file to write")->required();
  calibrate->add_option("--threads", cal_threads, "worker threads, 0 = all cores")
  ->capture_default_str();
  cal_flags.add_to(*calibrate);

  // histogram
  auto * histogram = app.add_subcommand("histogram", "export the intensity histogram as CSV");
  std::string hist_input;
  std::string hist_out;
  histogram->add_option("input", hist_input, "input PGM")->required();
  histogram->add_option("--out", hist_out, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  RunManifest manifest;
  manifest.command = app.get_subcommands().front()->get_name();

  if (segment->parsed()) {
    manifest.inputs = {seg_input};
    return run_command(manifest, manifest_path, seg_out, [&] {
               const livseg::PipelineConfig cfg = resolve_config(seg_flags);
               manifest.config = livseg::to_json(cfg);
               const livseg::GrayImage img = livseg::to_8bit(livseg::load_pgm(seg_input));
               try {
                 const auto result = livseg::run_pipeline(img, cfg);
                 livseg::dump_stages(result, cfg, seg_out);
                 return kExitOk;
               } catch (const livseg::LiverNotFound & e) {
                 std::cerr << "liver not found: " << e.what() << "\n";
                 livseg::dump_diagnostic_stages(e, seg_out);
                 return kExitLiverNotFound;
               }
             });
  }

  if (phantom->parsed()) {
    const fs::path prefix(ph_out);
    return run_command(manifest, manifest_path, directory_of(prefix), [&] {
               manifest.config = {
                 {"width", ph_width}, {"height", ph_height}, {"seed", ph_seed},
                 {"sigma", ph_sigma}, {"s1", ph_s1}, {"s2", ph_s2}};
               const auto ph = livseg::make_phantom(
                 ph_width, ph_height, ph_seed, ph_sigma, livseg::ThresholdPair(ph_s1, ph_s2));
               if (prefix.has_parent_path()) {
                 fs::create_directories(prefix.parent_path());
               }
               livseg::save_pgm(prefix.string() + ".pgm", ph.image);
               livseg::save_pgm(prefix.string() + "_truth.pgm", livseg::mask_to_image(ph.truth));
               return kExitOk;
             });
  }

  if (eval->parsed()) {
    const fs::path out_dir = ev_out ? fs::path(*ev_out) : fs::path(ev_corpus);
    manifest.inputs = {ev_corpus};
    return run_command(manifest, manifest_path, out_dir, [&] {
               const livseg::PipelineConfig cfg = resolve_config(ev_flags);
               manifest.config = livseg::to_json(cfg);
               const auto pairs = find_pairs(ev_corpus);
               if (pairs.empty()) {
                 std::cerr << "error: no NAME.pgm / NAME_truth.pgm pairs in " << ev_corpus << "\n";
                 return kExitError;
               }
               const auto samples = load_corpus(pairs);
               const auto threads = livseg::resolve_threads(ev_threads);
               const auto report = livseg::evaluate_corpus(samples, cfg, threads);
               fs::create_directories(out_dir);
               write_text(out_dir / "report.csv", livseg::to_csv(report));
               write_text(out_dir / "report.json", livseg::to_json(report).dump(2) + "\n");
               if (ev_stages) {
                 livseg::parallel_for(samples.size(), threads, [&](std::size_t i) {
                   try {
                     const auto r = livseg::run_pipeline(samples[i].image, cfg);
                     livseg::dump_stages(r, cfg, fs::path(*ev_stages) / samples[i].id);
                   } catch (const livseg::LiverNotFound & e) {
                     livseg::dump_diagnostic_stages(e, fs::path(*ev_stages) / samples[i].id);
                   }
                 });
               }
               std::printf("mean_dice=%.3f n_failed=%zu\n", report.mean_dice, report.n_failed);
               return kExitOk;
             });
  }

  if (calibrate->parsed()) {
    const fs::path out(cal_out);
    manifest.inputs = {cal_corpus};
    return run_command(manifest, manifest_path, directory_of(out), [&] {
               const livseg::PipelineConfig base = resolve_config(cal_flags);
               manifest.config = livseg::to_json(base);
               manifest.config["step"] = cal_step;
               livseg::threshold_grid(cal_step);  // validate before loading images
               const auto pairs = find_pairs(cal_corpus);
               if (pairs.empty()) {
                 std::cerr << "error: no NAME.pgm / NAME_truth.pgm pairs in " << cal_corpus << "\n";
                 return kExitError;
               }
               const auto best = livseg::calibrate_thresholds(
                 load_corpus(pairs), cal_step, base, livseg::resolve_threads(cal_threads));
               char text[128];
               std::snprintf(text, sizeof(text), "s1=%d\ns2=%d\nmean_dice=%.6f\n",
               best.thresholds.s1(), best.thresholds.s2(), best.mean_dice);
               if (out.has_parent_path()) {
                 fs::create_directories(out.parent_path());
               }
               write_text(out, text);
               std::printf("s1=%d s2=%d mean_dice=%.3f\n", best.thresholds.s1(),
               best.thresholds.s2(), best.mean_dice);
               return kExitOk;
             });
  }

  if (histogram->parsed()) {
    const fs::path out(hist_out);
    manifest.inputs = {hist_input};
    return run_command(manifest, manifest_path, directory_of(out), [&] {
               const auto img = livseg::to_8bit(livseg::load_pgm(hist_input));
               write_text(out, livseg::histogram_csv(livseg::compute_histogram(img)));
               return kExitOk;
             });
  }
  return kExitError;
}
