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

#include <cmath>

#include "gtest/gtest.h"
#include "sonarmap/error.hpp"
#include "test_util.hpp"

namespace sonarmap {
namespace {

TEST(ConfigTest, EmptyTextGivesDefaults) {
  const PipelineConfig config = PipelineConfig::Parse("");
  EXPECT_EQ(config, PipelineConfig());
  EXPECT_EQ(config.filter, FilterParams());
  EXPECT_EQ(config.sensor.threshold, 30);
  EXPECT_DOUBLE_EQ(config.grid.resolution, 0.05);
}

TEST(ConfigTest, ParsesKeysCommentsAndWhitespace) {
  const PipelineConfig config = PipelineConfig::Parse(
      "# sonar\n"
      "sonar.range_max = 8   # meters\n"
      "  sonar.bearing_min_deg=-45\n"
      "sonar.bearing_max_deg = 45\n"
      "\n"
      "filter.lee_cu = 0.3\n"
      "sensor.threshold = 45\n"
      "sensor.max_range = 6.5\n"
      "paths.mask_dir = /data/masks\n"
      "seed = 18446744073709551615\n");
  EXPECT_DOUBLE_EQ(config.sonar.range_max, 8.0);
  EXPECT_DOUBLE_EQ(config.sonar.bearing_min_deg, -45.0);
  EXPECT_EQ(config.filter.lee_cu, 0.3);
  EXPECT_FALSE(config.filter.lee_cmax.has_value());
  EXPECT_EQ(config.sensor.threshold, 45);
  EXPECT_EQ(config.sensor.max_range, 6.5);
  EXPECT_EQ(config.paths.mask_dir, "/data/masks");
  EXPECT_EQ(config.seed, 18446744073709551615ULL);
  const SonarConfig sonar = config.sonar.ToSonarConfig();
  EXPECT_NEAR(sonar.bearing_max, M_PI / 4.0, 1e-15);
  EXPECT_EQ(config.sensor_params().max_integration_range, 6.5);
}

TEST(ConfigTest, SerializeRoundTrips) {
  PipelineConfig config;
  config.sonar.range_bins = 300;
  config.noise.background_sigma = 12.5;
  config.filter.lee_cmax = 0.9;
  config.filter.diffusion_kappa = 0.1 + 0.2;
  config.sensor.p_free = 0.6;
  config.paths.output_dir = "out";
  config.seed = 99;
  EXPECT_EQ(PipelineConfig::Parse(config.Serialize()), config);
  EXPECT_EQ(PipelineConfig::Parse(PipelineConfig().Serialize()),
            PipelineConfig());
}

TEST(ConfigTest, UnsetOptionalsAreOmitted) {
  const std::string text = PipelineConfig().Serialize();
  EXPECT_EQ(text.find("filter.lee_cu"), std::string::npos);
  EXPECT_EQ(text.find("sensor.max_range"), std::string::npos);
  EXPECT_NE(text.find("filter.frost_damping = 2\n"), std::string::npos);
}

TEST(ConfigTest, Rejections) {
  EXPECT_THROW(PipelineConfig::Parse("sonar.colour = red\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("just words\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("sonar.range_bins = 12.5\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("noise.sigma = abc\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("seed = -1\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("sonar.range_min = 6\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("sensor.threshold = 300\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("sensor.p_free = 1\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("filter.diffusion_lambda = 0.5\n"),
               DataError);
  EXPECT_THROW(PipelineConfig::Parse("grid.resolution = 0\n"), DataError);
  EXPECT_THROW(PipelineConfig::Parse("noise.sigma = -0.1\n"), DataError);
}

TEST(ConfigTest, LoadFromFile) {
  testing::TempDir dir;
  testing::WriteFile(dir / "c.cfg", "sonar.range_bins = 100\n");
  EXPECT_EQ(PipelineConfig::Load(dir / "c.cfg").sonar.range_bins, 100);
  EXPECT_THROW(PipelineConfig::Load(dir / "none.cfg"), IoError);
}

}  // namespace
}  // namespace sonarmap
