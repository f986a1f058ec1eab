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

#include "sonarmap/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

#include "sonarmap/error.hpp"

namespace sonarmap {
namespace {

using Rgb = std::array<std::uint8_t, 3>;

constexpr Rgb kPalette[] = {{31, 119, 180}, {255, 127, 14}, {44, 160, 44},
                            {214, 39, 40},  {148, 103, 189}, {140, 86, 75},
                            {227, 119, 194}, {127, 127, 127}};

class Canvas {
 public:
  Canvas(int width, int height)
      : width_(width), height_(height),
        pixels_(static_cast<std::size_t>(width) * height, Rgb{255, 255, 255}) {}

  void Set(int x, int y, const Rgb& color) {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
    pixels_[static_cast<std::size_t>(y) * width_ + x] = color;
  }

  void Line(int x0, int y0, int x1, int y1, const Rgb& color) {
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      Set(x0, y0, color);
      Set(x0, y0 + 1, color);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  void Write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write chart " + path.string());
    out << "P6\n" << width_ << ' ' << height_ << "\n255\n";
    for (const Rgb& p : pixels_) {
      out.write(reinterpret_cast<const char*>(p.data()), 3);
    }
    if (!out) throw IoError("failed writing chart " + path.string());
  }

 private:
  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

}  // namespace

void WriteLineChart(const std::filesystem::path& path,
                    const std::vector<PlotSeries>& series, int width,
                    int height) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = y_lo = 0.0;
    x_hi = y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;

  constexpr int kMargin = 40;
  Canvas canvas(width, height);
  const Rgb black{0, 0, 0};
  const int left = kMargin;
  const int right = width - kMargin;
  const int top = kMargin;
  const int bottom = height - kMargin;
  canvas.Line(left, top, right, top, black);
  canvas.Line(left, bottom, right, bottom, black);
  canvas.Line(left, top, left, bottom, black);
  canvas.Line(right, top, right, bottom, black);

  const auto to_px = [&](double x, double y) {
    const int px = left + static_cast<int>(std::lround((x - x_lo) /
                                                       (x_hi - x_lo) *
                                                       (right - left)));
    const int py = bottom - static_cast<int>(std::lround((y - y_lo) /
                                                         (y_hi - y_lo) *
                                                         (bottom - top)));
    return std::array<int, 2>{px, py};
  };

  std::ofstream legend(path.string() + ".legend.txt");
  if (!legend) throw IoError("cannot write chart legend for " + path.string());
  legend << "x_range " << x_lo << ' ' << x_hi << "\ny_range " << y_lo << ' '
         << y_hi << '\n';
  for (std::size_t s = 0; s < series.size(); ++s) {
    const Rgb& color = kPalette[s % std::size(kPalette)];
    legend << series[s].name << ' ' << int{color[0]} << ',' << int{color[1]}
           << ',' << int{color[2]} << '\n';
    bool have_prev = false;
    std::array<int, 2> prev{};
    const auto& xs = series[s].x;
    const auto& ys = series[s].y;
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
        have_prev = false;
        continue;
      }
      const auto p = to_px(xs[i], ys[i]);
      if (have_prev) canvas.Line(prev[0], prev[1], p[0], p[1], color);
      for (int d = -2; d <= 2; ++d) {
        canvas.Set(p[0] + d, p[1], color);
        canvas.Set(p[0], p[1] + d, color);
      }
      prev = p;
      have_prev = true;
    }
  }
  canvas.Write(path);
}

}  // namespace sonarmap
