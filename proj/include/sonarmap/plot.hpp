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

#ifndef SONARMAP_PLOT_HPP_
#define SONARMAP_PLOT_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace sonarmap {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Renders the series as colored polylines on a framed white canvas and
// writes a binary PPM (P6). Non-finite points are skipped. Series names go
// to a sidecar `<path>.legend.txt` listing name and RGB color.
void WriteLineChart(const std::filesystem::path& path,
                    const std::vector<PlotSeries>& series, int width = 640,
                    int height = 400);

}  // namespace sonarmap

#endif  // SONARMAP_PLOT_HPP_
