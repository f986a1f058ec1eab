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

#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace sonarmap::oracle {

int Mirror(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

namespace {

std::vector<double> Window(const RangeImage& image, int r, int c, int radius) {
  std::vector<double> values;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      values.push_back(image(Mirror(r + dr, image.rows()),
                             Mirror(c + dc, image.cols())));
    }
  }
  return values;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double Variance(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / v.size();
}

using Matrix = std::vector<std::vector<double>>;

Matrix Multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = b[0].size();
  const std::size_t k = b.size();
  Matrix out(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

Matrix Transpose(const Matrix& a) {
  Matrix out(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  }
  return out;
}

// Symmetric padding to a multiple of `block`, then the signal followed by its
// reversal.
std::vector<int> ExtensionIndices(int n, int block) {
  const int padded = (n + block - 1) / block * block;
  std::vector<int> forward;
  for (int i = 0; i < padded; ++i) forward.push_back(Mirror(i, n));
  std::vector<int> all = forward;
  all.insert(all.end(), forward.rbegin(), forward.rend());
  return all;
}

}  // namespace

RangeImage NaiveFrost(const RangeImage& image, int radius, double damping) {
  RangeImage out(image.rows(), image.cols());
  for (int r = 0; r < image.rows(); ++r) {
    for (int c = 0; c < image.cols(); ++c) {
      const auto window = Window(image, r, c, radius);
      const double mean = Mean(window);
      if (mean <= 0.0) {
        out(r, c) = image(r, c);
        continue;
      }
      const double cv2 = Variance(window, mean) / (mean * mean);
      double num = 0.0;
      double den = 0.0;
      int idx = 0;
      for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
          const int d = std::max(std::abs(dr), std::abs(dc));
          const double w = std::exp(-damping * cv2 * d);
          num += w * window[idx++];
          den += w;
        }
      }
      out(r, c) = QuantizePixel(num / den);
    }
  }
  return out;
}

RangeImage NaiveEnhancedLee(const RangeImage& image, int radius, double cu,
                            double cmax, double damping, LeeRegimes* regimes) {
  RangeImage out(image.rows(), image.cols());
  for (int r = 0; r < image.rows(); ++r) {
    for (int c = 0; c < image.cols(); ++c) {
      const auto window = Window(image, r, c, radius);
      const double mean = Mean(window);
      if (mean <= 0.0) continue;
      const double cv = std::sqrt(Variance(window, mean)) / mean;
      const double center = image(r, c);
      double value;
      if (cv <= cu) {
        value = mean;
        if (regimes) ++regimes->homogeneous;
      } else if (cv >= cmax) {
        value = center;
        if (regimes) ++regimes->point_target;
      } else {
        const double w = std::exp(-damping * (cv - cu) / (cmax - cv));
        value = w * mean + (1.0 - w) * center;
        if (regimes) ++regimes->heterogeneous;
      }
      out(r, c) = QuantizePixel(value);
    }
  }
  return out;
}

RangeImage NaiveDiffusion(const RangeImage& image, int iterations,
                          double kappa, double lambda) {
  const int rows = image.rows();
  const int cols = image.cols();
  std::vector<std::vector<double>> u(rows, std::vector<double>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) u[r][c] = image(r, c);
  }
  const auto flux = [&](double d) {
    return std::exp(-(d / kappa) * (d / kappa)) * d;
  };
  for (int it = 0; it < iterations; ++it) {
    auto next = u;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const double here = u[r][c];
        const double north = u[Mirror(r - 1, rows)][c] - here;
        const double south = u[Mirror(r + 1, rows)][c] - here;
        const double east = u[r][Mirror(c + 1, cols)] - here;
        const double west = u[r][Mirror(c - 1, cols)] - here;
        next[r][c] = here + lambda * (flux(north) + flux(south) + flux(east) +
                                      flux(west));
      }
    }
    u = std::move(next);
  }
  RangeImage out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out(r, c) = QuantizePixel(u[r][c]);
  }
  return out;
}

std::vector<std::vector<double>> Daub4Matrix(int n) {
  const double s3 = std::sqrt(3.0);
  const double norm = 4.0 * std::sqrt(2.0);
  const double h[4] = {(1 + s3) / norm, (3 + s3) / norm, (3 - s3) / norm,
                       (1 - s3) / norm};
  const double g[4] = {h[3], -h[2], h[1], -h[0]};
  Matrix m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n / 2; ++i) {
    for (int k = 0; k < 4; ++k) {
      m[i][(2 * i + k) % n] += h[k];
      m[n / 2 + i][(2 * i + k) % n] += g[k];
    }
  }
  return m;
}

NaiveWaveletResult NaiveWavelet(const RangeImage& image, int levels) {
  const int block = 1 << (levels - 1);
  const auto row_idx = ExtensionIndices(image.rows(), block);
  const auto col_idx = ExtensionIndices(image.cols(), block);
  const int h = static_cast<int>(row_idx.size());
  const int w = static_cast<int>(col_idx.size());
  Matrix data(h, std::vector<double>(w));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) data[r][c] = image(row_idx[r], col_idx[c]);
  }

  const auto sub = [&](int bh, int bw) {
    Matrix b(bh, std::vector<double>(bw));
    for (int r = 0; r < bh; ++r) {
      for (int c = 0; c < bw; ++c) b[r][c] = data[r][c];
    }
    return b;
  };
  const auto put = [&](const Matrix& b) {
    for (std::size_t r = 0; r < b.size(); ++r) {
      for (std::size_t c = 0; c < b[0].size(); ++c) data[r][c] = b[r][c];
    }
  };
  for (int level = 0; level < levels; ++level) {
    const int bh = h >> level;
    const int bw = w >> level;
    put(Multiply(Multiply(Daub4Matrix(bh), sub(bh, bw)),
                 Transpose(Daub4Matrix(bw))));
  }

  std::vector<double> diagonal;
  for (int r = h / 2; r < h; ++r) {
    for (int c = w / 2; c < w; ++c) diagonal.push_back(std::abs(data[r][c]));
  }
  std::sort(diagonal.begin(), diagonal.end());
  const std::size_t n = diagonal.size();
  const double median = n % 2 == 1
                            ? diagonal[n / 2]
                            : 0.5 * (diagonal[n / 2 - 1] + diagonal[n / 2]);
  NaiveWaveletResult result;
  result.sigma = median / 0.6745;
  result.threshold =
      result.sigma * std::sqrt(2.0 * std::log(double(image.rows()) * image.cols()));

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (r < (h >> levels) && c < (w >> levels)) continue;
      const double v = data[r][c];
      const double mag = std::max(0.0, std::abs(v) - result.threshold);
      data[r][c] = v < 0 ? -mag : mag;
    }
  }
  for (int level = levels - 1; level >= 0; --level) {
    const int bh = h >> level;
    const int bw = w >> level;
    put(Multiply(Multiply(Transpose(Daub4Matrix(bh)), sub(bh, bw)),
                 Daub4Matrix(bw)));
  }
  result.image = RangeImage(image.rows(), image.cols());
  for (int r = 0; r < image.rows(); ++r) {
    for (int c = 0; c < image.cols(); ++c) {
      result.image(r, c) = QuantizePixel(data[r][c]);
    }
  }
  return result;
}

std::vector<VoxelIndex> ParametricLine(const VoxelIndex& a,
                                       const VoxelIndex& b) {
  const int d[3] = {b.x - a.x, b.y - a.y, b.z - a.z};
  const int steps =
      std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  std::vector<VoxelIndex> out;
  for (int i = 0; i <= steps; ++i) {
    int p[3];
    for (int k = 0; k < 3; ++k) {
      // ceil(i |d| / steps - 1/2) in exact integer arithmetic.
      const long num = 2L * i * std::abs(d[k]) - steps;
      const long den = 2L * std::max(steps, 1);
      const long rounded = num >= 0 ? (num + den - 1) / den : -((-num) / den);
      p[k] = static_cast<int>(d[k] < 0 ? -rounded : rounded);
    }
    out.push_back({a.x + p[0], a.y + p[1], a.z + p[2]});
  }
  return out;
}

RangeImage RandomSpeckledImage(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> level(0, 255);
  std::uniform_int_distribution<int> row(0, rows - 1);
  std::uniform_int_distribution<int> col(0, cols - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  RangeImage image(rows, cols, static_cast<std::uint8_t>(unit(rng) < 0.5 ? 0 : level(rng) / 4));
  const int patches = 1 + static_cast<int>(unit(rng) * 3);
  for (int p = 0; p < patches; ++p) {
    int r0 = row(rng), r1 = row(rng), c0 = col(rng), c1 = col(rng);
    if (r0 > r1) std::swap(r0, r1);
    if (c0 > c1) std::swap(c0, c1);
    const int value = level(rng);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) image(r, c) = value;
    }
  }
  const double sigmas[4] = {0.0, 0.1, 0.3, 0.6};
  const double sigma = sigmas[static_cast<int>(unit(rng) * 4)];
  for (auto& v : image.pixels()) {
    v = QuantizePixel(v * (1.0 + sigma * normal(rng)));
  }
  return image;
}

}  // namespace sonarmap::oracle
