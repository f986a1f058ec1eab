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

#include "sonarmap/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "sonarmap/error.hpp"
#include "text_util.hpp"

namespace sonarmap {
namespace {

struct Field {
  std::string key;
  std::function<void(PipelineConfig&, std::string_view)> set;
  // nullopt when the value is unset and should not be written.
  std::function<std::optional<std::string>(const PipelineConfig&)> get;
};

template <typename Member>
Field DoubleField(std::string key, Member member) {
  return {key,
          [key, member](PipelineConfig& c, std::string_view v) {
            const auto parsed = internal::ParseDouble(v);
            if (!parsed) throw DataError("config key " + key + ": not a number");
            member(c) = *parsed;
          },
          [member](const PipelineConfig& c) -> std::optional<std::string> {
            return internal::FormatDouble(member(const_cast<PipelineConfig&>(c)));
          }};
}

template <typename Member>
Field OptionalDoubleField(std::string key, Member member) {
  return {key,
          [key, member](PipelineConfig& c, std::string_view v) {
            const auto parsed = internal::ParseDouble(v);
            if (!parsed) throw DataError("config key " + key + ": not a number");
            member(c) = *parsed;
          },
          [member](const PipelineConfig& c) -> std::optional<std::string> {
            const auto& value = member(const_cast<PipelineConfig&>(c));
            if (!value) return std::nullopt;
            return internal::FormatDouble(*value);
          }};
}

template <typename Member>
Field IntField(std::string key, Member member) {
  return {key,
          [key, member](PipelineConfig& c, std::string_view v) {
            const auto parsed = internal::ParseInt(v);
            if (!parsed) {
              throw DataError("config key " + key + ": not an integer");
            }
            member(c) = static_cast<int>(*parsed);
          },
          [member](const PipelineConfig& c) -> std::optional<std::string> {
            return std::to_string(member(const_cast<PipelineConfig&>(c)));
          }};
}

template <typename Member>
Field StringField(std::string key, Member member) {
  return {key,
          [member](PipelineConfig& c, std::string_view v) {
            member(c) = std::string(v);
          },
          [member](const PipelineConfig& c) -> std::optional<std::string> {
            const std::string& value = member(const_cast<PipelineConfig&>(c));
            if (value.empty()) return std::nullopt;
            return value;
          }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"seed",
       [](PipelineConfig& c, std::string_view v) {
         const auto parsed = internal::ParseUint64(v);
         if (!parsed) {
           throw DataError("config key seed: not a non-negative integer");
         }
         c.seed = *parsed;
       },
       [](const PipelineConfig& c) -> std::optional<std::string> {
         return std::to_string(c.seed);
       }},
      DoubleField("sonar.range_min",
                  [](PipelineConfig& c) -> double& { return c.sonar.range_min; }),
      DoubleField("sonar.range_max",
                  [](PipelineConfig& c) -> double& { return c.sonar.range_max; }),
      DoubleField("sonar.bearing_min_deg", [](PipelineConfig& c) -> double& {
        return c.sonar.bearing_min_deg;
      }),
      DoubleField("sonar.bearing_max_deg", [](PipelineConfig& c) -> double& {
        return c.sonar.bearing_max_deg;
      }),
      DoubleField("sonar.elevation_min_deg", [](PipelineConfig& c) -> double& {
        return c.sonar.elevation_min_deg;
      }),
      DoubleField("sonar.elevation_max_deg", [](PipelineConfig& c) -> double& {
        return c.sonar.elevation_max_deg;
      }),
      IntField("sonar.bearing_bins",
               [](PipelineConfig& c) -> int& { return c.sonar.bearing_bins; }),
      IntField("sonar.range_bins",
               [](PipelineConfig& c) -> int& { return c.sonar.range_bins; }),
      IntField("sonar.elevation_samples", [](PipelineConfig& c) -> int& {
        return c.sonar.elevation_samples;
      }),
      DoubleField("noise.sigma",
                  [](PipelineConfig& c) -> double& { return c.noise.sigma; }),
      DoubleField("noise.background_sigma", [](PipelineConfig& c) -> double& {
        return c.noise.background_sigma;
      }),
      IntField("filter.window_radius",
               [](PipelineConfig& c) -> int& { return c.filter.window_radius; }),
      DoubleField("filter.frost_damping", [](PipelineConfig& c) -> double& {
        return c.filter.frost_damping;
      }),
      OptionalDoubleField("filter.lee_cu",
                          [](PipelineConfig& c) -> std::optional<double>& {
                            return c.filter.lee_cu;
                          }),
      OptionalDoubleField("filter.lee_cmax",
                          [](PipelineConfig& c) -> std::optional<double>& {
                            return c.filter.lee_cmax;
                          }),
      DoubleField("filter.lee_damping", [](PipelineConfig& c) -> double& {
        return c.filter.lee_damping;
      }),
      IntField("filter.diffusion_iterations", [](PipelineConfig& c) -> int& {
        return c.filter.diffusion_iterations;
      }),
      DoubleField("filter.diffusion_kappa", [](PipelineConfig& c) -> double& {
        return c.filter.diffusion_kappa;
      }),
      DoubleField("filter.diffusion_lambda", [](PipelineConfig& c) -> double& {
        return c.filter.diffusion_lambda;
      }),
      IntField("filter.wavelet_levels",
               [](PipelineConfig& c) -> int& { return c.filter.wavelet_levels; }),
      DoubleField("filter.unsharp_amount", [](PipelineConfig& c) -> double& {
        return c.filter.unsharp_amount;
      }),
      DoubleField("filter.unsharp_radius", [](PipelineConfig& c) -> double& {
        return c.filter.unsharp_radius;
      }),
      DoubleField("sensor.p_free",
                  [](PipelineConfig& c) -> double& { return c.sensor.p_free; }),
      DoubleField("sensor.p_occ",
                  [](PipelineConfig& c) -> double& { return c.sensor.p_occ; }),
      IntField("sensor.threshold",
               [](PipelineConfig& c) -> int& { return c.sensor.threshold; }),
      OptionalDoubleField("sensor.max_range",
                          [](PipelineConfig& c) -> std::optional<double>& {
                            return c.sensor.max_range;
                          }),
      DoubleField("grid.resolution",
                  [](PipelineConfig& c) -> double& { return c.grid.resolution; }),
      StringField("paths.corpus_dir", [](PipelineConfig& c) -> std::string& {
        return c.paths.corpus_dir;
      }),
      StringField("paths.mask_dir", [](PipelineConfig& c) -> std::string& {
        return c.paths.mask_dir;
      }),
      StringField("paths.output_dir", [](PipelineConfig& c) -> std::string& {
        return c.paths.output_dir;
      }),
  };
  return fields;
}

}  // namespace

SonarConfig SonarSettings::ToSonarConfig() const {
  SonarConfig config;
  config.range_min = range_min;
  config.range_max = range_max;
  config.bearing_min = DegToRad(bearing_min_deg);
  config.bearing_max = DegToRad(bearing_max_deg);
  config.elevation_min = DegToRad(elevation_min_deg);
  config.elevation_max = DegToRad(elevation_max_deg);
  config.bearing_bins = bearing_bins;
  config.range_bins = range_bins;
  config.elevation_samples = elevation_samples;
  return config;
}

PipelineConfig PipelineConfig::Parse(std::string_view text) {
  PipelineConfig config;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(
        start, end == std::string_view::npos ? text.size() - start
                                             : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_number;
    const auto body = internal::Trim(internal::StripComment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw DataError("config line " + std::to_string(line_number) +
                      ": expected key = value");
    }
    const auto key = internal::Trim(body.substr(0, eq));
    const auto value = internal::Trim(body.substr(eq + 1));
    const auto& fields = Fields();
    const auto it = std::find_if(fields.begin(), fields.end(),
                                 [&](const Field& f) { return f.key == key; });
    if (it == fields.end()) {
      throw DataError("config line " + std::to_string(line_number) +
                      ": unknown key '" + std::string(key) + "'");
    }
    it->set(config, value);
  }
  config.Validate();
  return config;
}

PipelineConfig PipelineConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

std::string PipelineConfig::Serialize() const {
  std::string out;
  for (const Field& field : Fields()) {
    const auto value = field.get(*this);
    if (!value) continue;
    out += field.key + " = " + *value + "\n";
  }
  return out;
}

void PipelineConfig::Validate() const {
  sonar.ToSonarConfig().Validate();
  noise_params().Validate();
  filter.Validate();
  ResolveLeeThresholds(filter, noise.sigma);
  sensor_params().Validate();
  if (!(grid.resolution > 0.0)) throw DataError("grid.resolution must be > 0");
}

}  // namespace sonarmap
