/*
 * Copyright 2026 The sonarmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sonarmap/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sonarmap/config.hpp"
#include "sonarmap/error.hpp"
#include "sonarmap/evaluation.hpp"
#include "sonarmap/filters.hpp"
#include "sonarmap/geometry.hpp"
#include "sonarmap/occupancy.hpp"
#include "sonarmap/plot.hpp"
#include "sonarmap/simulator.hpp"

namespace sonarmap {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool plot = false;
};

struct Context {
  PipelineConfig config;
  fs::path out_dir;
  bool plot = false;
  std::ostream* out;
  std::ostream* err;
};

Context MakeContext(const GlobalOptions& global, std::ostream& out,
                    std::ostream& err, bool needs_out_dir = true) {
  Context ctx{global.config_path.empty()
                  ? PipelineConfig{}
                  : PipelineConfig::Load(global.config_path),
              {}, global.plot, &out, &err};
  if (global.seed) ctx.config.seed = *global.seed;
  ctx.out_dir = global.out_dir.empty() ? fs::path(ctx.config.paths.output_dir)
                                       : fs::path(global.out_dir);
  if (needs_out_dir) {
    if (ctx.out_dir.empty()) {
      throw UsageError("an output directory is required (--out-dir)");
    }
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw IoError("cannot create directory " + ctx.out_dir.string());
  }
  return ctx;
}

// Sorted *.pgm file names in `dir`.
std::vector<std::string> ListFrames(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<FilterKind> ParseFilterList(const std::string& list) {
  if (list == "all") return AllFilters();
  std::vector<FilterKind> kinds;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto kind = ParseFilterName(name);
    if (!kind) throw UsageError("unknown filter '" + name + "'");
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw UsageError("no filters selected");
  return kinds;
}

std::vector<BinaryMask> LoadMasks(const fs::path& dir,
                                  const std::vector<std::string>& frames) {
  std::vector<BinaryMask> masks;
  for (const std::string& name : frames) {
    masks.push_back(BinaryMask::FromImage(ReadPgm(dir / name)));
  }
  return masks;
}

std::string SceneLabel(const fs::path& dir) {
  const fs::path clean = dir.lexically_normal();
  const std::string name = clean.filename().string();
  return name.empty() ? clean.parent_path().filename().string() : name;
}

int CmdSimulate(const Context& ctx, const std::string& scene_path,
                const std::string& trajectory_path) {
  const Scene scene = ReadScene(scene_path);
  const std::vector<Pose> poses = ReadPoses(trajectory_path);
  const CorpusManifest manifest =
      GenerateCorpus(scene, poses, ctx.config.sonar.ToSonarConfig(),
                     ctx.config.noise_params(), ctx.out_dir);
  *ctx.out << "wrote " << manifest.frames.size() << " frames to "
           << ctx.out_dir.string() << '\n';
  return kExitSuccess;
}

int CmdAddNoise(const Context& ctx, const std::string& in_dir,
                std::optional<double> sigma) {
  NoiseParams params = ctx.config.noise_params();
  if (sigma) params.sigma = *sigma;
  const auto frames = ListFrames(in_dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    NoiseParams frame_params = params;
    frame_params.seed = FrameSeed(params.seed, i);
    WritePgm(ctx.out_dir / frames[i],
             AddSpeckle(ReadPgm(fs::path(in_dir) / frames[i]), frame_params));
  }
  *ctx.out << "wrote " << frames.size() << " noisy frames to "
           << ctx.out_dir.string() << '\n';
  return kExitSuccess;
}

int CmdFilter(const Context& ctx, const std::string& name,
              const std::string& in_dir, std::string mask_dir, bool raw) {
  const auto kind = ParseFilterName(name);
  if (!kind) throw UsageError("unknown filter '" + name + "'");
  if (mask_dir.empty()) mask_dir = ctx.config.paths.mask_dir;
  if (*kind == FilterKind::kMask && mask_dir.empty()) {
    throw UsageError("filter 'mask' requires --mask-dir");
  }
  const auto frames = ListFrames(in_dir);
  std::size_t skipped = 0;
  for (const std::string& frame : frames) {
    const RangeImage image = ReadPgm(fs::path(in_dir) / frame);
    std::optional<BinaryMask> mask;
    if (*kind == FilterKind::kMask) {
      const fs::path mask_path = fs::path(mask_dir) / frame;
      if (!fs::exists(mask_path)) {
        *ctx.err << "warning: no mask for " << frame << ", skipped\n";
        ++skipped;
        continue;
      }
      mask = BinaryMask::FromImage(ReadPgm(mask_path));
    }
    const BinaryMask* mask_ptr = mask ? &*mask : nullptr;
    const RangeImage filtered =
        raw ? ApplyFilter(*kind, image, ctx.config.filter, mask_ptr,
                          ctx.config.noise.sigma)
            : PrepareForMapping(*kind, image, ctx.config.filter, mask_ptr,
                                ctx.config.noise.sigma);
    WritePgm(ctx.out_dir / frame, filtered);
  }
  *ctx.out << "filtered " << frames.size() - skipped << " frames with "
           << name << " (" << skipped << " skipped)\n";
  if (!frames.empty() && skipped == frames.size()) {
    *ctx.err << "error: every frame was skipped\n";
    return kExitDataError;
  }
  return kExitSuccess;
}

int CmdMap(const Context& ctx, const std::string& in_dir,
           const std::string& pose_file, std::optional<int> threshold) {
  const auto frames = ListFrames(in_dir);
  const std::vector<Pose> poses = ReadPoses(pose_file);
  if (frames.size() != poses.size()) {
    throw DataError(std::to_string(frames.size()) + " frames in " + in_dir +
                    " but " + std::to_string(poses.size()) + " poses in " +
                    pose_file);
  }
  if (frames.empty()) *ctx.err << "warning: no frames; writing an empty map\n";
  SensorModelParams sensor = ctx.config.sensor_params();
  if (threshold) sensor.threshold = *threshold;
  const SonarConfig sonar = ctx.config.sonar.ToSonarConfig();
  std::vector<RangeImage> images;
  for (const std::string& frame : frames) {
    images.push_back(ReadPgm(fs::path(in_dir) / frame));
  }
  IntegrationStats stats;
  const OccupancyGrid grid = BuildMap(images, poses, sonar, sensor,
                                      ctx.config.grid.resolution, &stats);
  if (stats.frames_skipped > 0) {
    *ctx.err << "warning: " << stats.frames_skipped
             << " frames had poses outside the grid\n";
  }
  ExportMapCsv(ctx.out_dir / "map.csv", grid);
  ExportPointClouds(ctx.out_dir / "free_cells.csv",
                    ctx.out_dir / "occupied_cells.csv", grid);
  const MapSummary summary = Summarize(grid);
  WriteSummary(ctx.out_dir / "report.txt", summary, stats);
  *ctx.out << "cells " << summary.total << ": free " << summary.free
           << ", occupied " << summary.occupied << ", unknown "
           << summary.unknown << '\n';
  return kExitSuccess;
}

std::vector<Corpus> LoadCorpora(const std::vector<std::string>& dirs) {
  std::vector<Corpus> corpora;
  for (const std::string& dir : dirs) corpora.push_back(LoadCorpus(dir));
  return corpora;
}

std::vector<std::vector<BinaryMask>> LoadExternalMasks(
    const std::vector<std::string>& mask_dirs,
    const std::vector<Corpus>& corpora) {
  if (mask_dirs.size() != corpora.size()) {
    throw UsageError("give one --mask-dir per --corpus");
  }
  std::vector<std::vector<BinaryMask>> masks;
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    masks.push_back(LoadMasks(mask_dirs[i], corpora[i].manifest.frames));
  }
  return masks;
}

int CmdEval(const Context& ctx, const std::vector<std::string>& corpus_dirs,
            const std::string& filter_list,
            const std::vector<std::string>& mask_dirs) {
  const auto filters = ParseFilterList(filter_list);
  const auto corpora = LoadCorpora(corpus_dirs);
  std::vector<std::vector<BinaryMask>> external;
  if (!mask_dirs.empty()) external = LoadExternalMasks(mask_dirs, corpora);

  std::vector<ScenePsnr> scenes;
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    ScenePsnr scene;
    scene.scene = SceneLabel(corpus_dirs[i]);
    scene.frames = corpora[i].manifest.frames;
    scene.results = EvaluatePsnr(corpora[i], filters, ctx.config.filter,
                                 external.empty() ? nullptr : &external[i]);
    for (const PsnrResult& r : scene.results) {
      *ctx.out << scene.scene << ' ' << std::setw(12) << r.filter << ' '
               << std::fixed << std::setprecision(2) << r.mean << " dB\n";
    }
    scenes.push_back(std::move(scene));
  }
  WritePsnrCsv(ctx.out_dir / "psnr_frames.csv", scenes);
  WritePsnrSummaryCsv(ctx.out_dir / "psnr_summary.csv", scenes);
  if (ctx.plot) {
    std::vector<PlotSeries> series;
    for (std::size_t f = 0; f < filters.size(); ++f) {
      PlotSeries s{std::string(FilterName(filters[f])), {}, {}};
      for (std::size_t i = 0; i < scenes.size(); ++i) {
        s.x.push_back(static_cast<double>(i));
        s.y.push_back(scenes[i].results[f].mean);
      }
      series.push_back(std::move(s));
    }
    WriteLineChart(ctx.out_dir / "psnr.ppm", series);
  }
  return kExitSuccess;
}

int CmdSweep(const Context& ctx, const std::vector<std::string>& corpus_dirs,
             const std::string& filter_list,
             const std::vector<std::string>& mask_dirs, int t_min, int t_max,
             int t_step) {
  if (t_min > t_max) throw UsageError("--t-min must not exceed --t-max");
  const auto filters = ParseFilterList(filter_list);
  const auto corpora = LoadCorpora(corpus_dirs);
  std::vector<std::vector<BinaryMask>> external;
  if (!mask_dirs.empty()) external = LoadExternalMasks(mask_dirs, corpora);

  SweepOptions options;
  options.thresholds = ThresholdRange(t_min, t_max, t_step);
  options.resolution = ctx.config.grid.resolution;
  options.sensor = ctx.config.sensor_params();
  options.filter = ctx.config.filter;
  options.masks = external.empty() ? nullptr : &external;
  std::vector<const Corpus*> pointers;
  for (const Corpus& c : corpora) pointers.push_back(&c);
  const auto rows = ThresholdSweep(pointers, filters, options);
  WriteSweepCsv(ctx.out_dir / "sweep.csv", rows);
  for (const SweepRow& r : rows) {
    *ctx.out << std::setw(12) << r.filter << " t=" << std::setw(3)
             << r.threshold << " FPR " << std::fixed << std::setprecision(4)
             << r.false_positive_rate << " FNR " << r.false_negative_rate
             << '\n';
  }
  if (ctx.plot) {
    std::vector<PlotSeries> fpr;
    std::vector<PlotSeries> fnr;
    for (const FilterKind kind : filters) {
      PlotSeries a{std::string(FilterName(kind)), {}, {}};
      PlotSeries b = a;
      for (const SweepRow& r : rows) {
        if (r.filter != a.name) continue;
        a.x.push_back(r.threshold);
        a.y.push_back(r.false_positive_rate);
        b.x.push_back(r.threshold);
        b.y.push_back(r.false_negative_rate);
      }
      fpr.push_back(std::move(a));
      fnr.push_back(std::move(b));
    }
    WriteLineChart(ctx.out_dir / "sweep_fpr.ppm", fpr);
    WriteLineChart(ctx.out_dir / "sweep_fnr.ppm", fnr);
  }
  return kExitSuccess;
}

int CmdBench(const Context& ctx, const std::string& corpus_dir,
             const std::string& filter_list, std::optional<int> max_frames) {
  const auto filters = ParseFilterList(filter_list);
  const Corpus corpus = LoadCorpus(corpus_dir);
  std::vector<RangeImage> frames = corpus.noisy;
  std::vector<BinaryMask> masks = corpus.masks;
  if (max_frames && static_cast<std::size_t>(*max_frames) < frames.size()) {
    frames.resize(*max_frames);
    masks.resize(*max_frames);
  }
  if (frames.size() < 10) {
    *ctx.err << "warning: fewer than 10 frames; means will be noisy\n";
  }
  const auto rows = BenchmarkRuntime(frames, masks, filters, ctx.config.filter,
                                     corpus.manifest.noise.sigma);
  WriteRuntimeCsv(ctx.out_dir / "runtime.csv", rows);
  for (const RuntimeRow& r : rows) {
    *ctx.out << std::setw(12) << r.filter << ' ' << std::scientific
             << std::setprecision(3) << r.mean_seconds << " s/frame (std "
             << r.std_seconds << ")\n";
  }
  return kExitSuccess;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Sonar range-image simulation, despeckling and occupancy "
               "mapping toolkit",
               "sonarmap"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--config", global.config_path, "Pipeline config file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", global.seed, "Random seed (overrides config)");
  app.add_option("--out-dir", global.out_dir, "Output directory");
  app.add_flag("--plot", global.plot, "Also write line-chart images");

  std::function<int()> action;

  auto* simulate = app.add_subcommand("simulate", "Render a noisy/clean/mask corpus")
                       ->fallthrough();
  std::string scene_path;
  std::string trajectory_path;
  simulate->add_option("--scene", scene_path, "Scene box list")->required();
  simulate->add_option("--trajectory", trajectory_path, "Pose CSV")->required();
  simulate->callback([&] {
    action = [&] {
      return CmdSimulate(MakeContext(global, out, err), scene_path,
                         trajectory_path);
    };
  });

  auto* addnoise = app.add_subcommand("addnoise", "Add speckle noise to PGM frames")
                       ->fallthrough();
  std::string noise_in;
  std::optional<double> sigma;
  addnoise->add_option("--in-dir", noise_in, "Input frames")->required();
  addnoise->add_option("--sigma", sigma, "Speckle sigma")
      ->check(CLI::NonNegativeNumber);
  addnoise->callback([&] {
    action = [&] {
      return CmdAddNoise(MakeContext(global, out, err), noise_in, sigma);
    };
  });

  auto* filter = app.add_subcommand("filter", "Despeckle PGM frames")
                     ->fallthrough();
  std::string filter_name;
  std::string filter_in;
  std::string mask_dir;
  bool raw = false;
  filter->add_option("--name", filter_name, "frost, lee-enhanced, anisodiff, "
                                            "wavelet or mask")
      ->required()
      ->check(CLI::IsMember({"frost", "lee-enhanced", "anisodiff", "wavelet",
                             "mask"}));
  filter->add_option("--in-dir", filter_in, "Input frames")->required();
  filter->add_option("--mask-dir", mask_dir, "Masks named like the frames");
  filter->add_flag("--raw", raw, "Skip histogram equalization");
  filter->callback([&] {
    action = [&] {
      return CmdFilter(MakeContext(global, out, err), filter_name, filter_in,
                       mask_dir, raw);
    };
  });

  auto* map = app.add_subcommand("map", "Integrate filtered frames into a map")
                  ->fallthrough();
  std::string map_in;
  std::string pose_file;
  std::optional<int> threshold;
  map->add_option("--in-dir", map_in, "Filtered frames")->required();
  map->add_option("--poses", pose_file, "Pose CSV, one line per frame")
      ->required();
  map->add_option("--threshold", threshold, "Intensity threshold t")
      ->check(CLI::Range(0, 255));
  map->callback([&] {
    action = [&] {
      return CmdMap(MakeContext(global, out, err), map_in, pose_file,
                    threshold);
    };
  });

  std::vector<std::string> corpus_dirs;
  std::string filter_list = "all";
  std::vector<std::string> mask_dirs;

  auto* eval = app.add_subcommand("eval", "PSNR of each filter per scene")
                   ->fallthrough();
  eval->add_option("--corpus", corpus_dirs, "Corpus directories")->required();
  eval->add_option("--filters", filter_list, "Comma list or 'all'");
  eval->add_option("--mask-dir", mask_dirs, "External masks, one per corpus");
  eval->callback([&] {
    action = [&] {
      return CmdEval(MakeContext(global, out, err), corpus_dirs, filter_list,
                     mask_dirs);
    };
  });

  auto* sweep = app.add_subcommand("sweep", "FPR/FNR over intensity thresholds")
                    ->fallthrough();
  int t_min = 0;
  int t_max = 60;
  int t_step = 5;
  sweep->add_option("--corpus", corpus_dirs, "Corpus directories")->required();
  sweep->add_option("--filters", filter_list, "Comma list or 'all'");
  sweep->add_option("--mask-dir", mask_dirs, "External masks, one per corpus");
  sweep->add_option("--t-min", t_min)->check(CLI::Range(0, 255));
  sweep->add_option("--t-max", t_max)->check(CLI::Range(0, 255));
  sweep->add_option("--t-step", t_step)->check(CLI::Range(1, 255));
  sweep->callback([&] {
    action = [&] {
      return CmdSweep(MakeContext(global, out, err), corpus_dirs, filter_list,
                      mask_dirs, t_min, t_max, t_step);
    };
  });

  auto* bench = app.add_subcommand("bench", "Per-frame filter runtime")
                    ->fallthrough();
  std::string bench_corpus;
  std::optional<int> max_frames;
  bench->add_option("--corpus", bench_corpus, "Corpus directory")->required();
  bench->add_option("--filters", filter_list, "Comma list or 'all'");
  bench->add_option("--frames", max_frames, "Use at most this many frames")
      ->check(CLI::PositiveNumber);
  bench->callback([&] {
    action = [&] {
      return CmdBench(MakeContext(global, out, err), bench_corpus, filter_list,
                      max_frames);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace sonarmap
