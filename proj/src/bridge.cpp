#include "loophull/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "loophull/numerics.hpp"
#include "loophull/rng.hpp"

namespace loophull {

namespace {

void validate(const BridgeSpec& spec) {
  if (spec.steps < 2) {
    throw std::invalid_argument("bridge spec needs at least 2 steps");
  }
  if (spec.kind == PathKind::lattice_loop && spec.steps % 2 != 0) {
    throw std::invalid_argument("lattice loop length must be even");
  }
}

}  // namespace

LoopPath sample_gaussian_bridge(const BridgeSpec& spec) {
  validate(spec);
  if (spec.kind != PathKind::gaussian_bridge) {
    throw std::invalid_argument("spec kind is not gaussian_bridge");
  }
  const int n = spec.steps;
  const double step_sd = std::sqrt(1.0 / n);
  CounterRng rng(spec.seed);

  LoopPath path;
  path.kind = PathKind::gaussian_bridge;
  path.points.resize(static_cast<std::size_t>(n) + 1);
  // Walk W_k, then pin: points[k] = W_k - (k/N) W_N. The subtraction is
  // exact at k = 0 and k = N, so the loop closes at (0,0) bit-exactly.
  std::vector<PlanarPoint> walk(static_cast<std::size_t>(n) + 1);
  walk[0] = {0.0, 0.0};
  for (int k = 1; k <= n; ++k) {
    double gx = 0.0;
    double gy = 0.0;
    rng.normal_pair(gx, gy);
    walk[k] = {walk[k - 1].x + step_sd * gx, walk[k - 1].y + step_sd * gy};
  }
  const PlanarPoint end = walk[n];
  for (int k = 0; k <= n; ++k) {
    const double f = static_cast<double>(k) / n;
    path.points[k] = {walk[k].x - f * end.x, walk[k].y - f * end.y};
  }
  return path;
}

LoopPath sample_lattice_loop(const BridgeSpec& spec) {
  validate(spec);
  if (spec.kind != PathKind::lattice_loop) {
    throw std::invalid_argument("spec kind is not lattice_loop");
  }
  const long long n = spec.steps;
  CounterRng rng(spec.seed);

  // Horizontal step count h (even): log weight
  //   C(n,h) + C(h,h/2) + C(n-h,(n-h)/2),
  // sampled by inverse CDF on the normalized weights.
  std::vector<double> logw;
  logw.reserve(static_cast<std::size_t>(n / 2) + 1);
  double logw_max = -1e300;
  for (long long h = 0; h <= n; h += 2) {
    const double lw = log_choose(n, h) + log_choose(h, h / 2) +
                      log_choose(n - h, (n - h) / 2);
    logw.push_back(lw);
    logw_max = std::max(logw_max, lw);
  }
  std::vector<double> cdf(logw.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    acc += std::exp(logw[i] - logw_max);
    cdf[i] = acc;
  }
  const double u = rng.uniform01() * acc;
  const std::size_t pick =
      std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
  const long long h = 2 * static_cast<long long>(std::min(pick, cdf.size() - 1));

  // Balanced step multiset, uniformly shuffled (Fisher-Yates).
  enum Step : unsigned char { east, west, north, south };
  std::vector<unsigned char> steps(static_cast<std::size_t>(n));
  std::size_t pos = 0;
  for (long long i = 0; i < h / 2; ++i) steps[pos++] = east;
  for (long long i = 0; i < h / 2; ++i) steps[pos++] = west;
  for (long long i = 0; i < (n - h) / 2; ++i) steps[pos++] = north;
  for (long long i = 0; i < (n - h) / 2; ++i) steps[pos++] = south;
  for (std::size_t i = steps.size() - 1; i > 0; --i) {
    const std::size_t j = rng.below(i + 1);
    std::swap(steps[i], steps[j]);
  }

  LoopPath path;
  path.kind = PathKind::lattice_loop;
  path.points.resize(static_cast<std::size_t>(n) + 1);
  double x = 0.0;
  double y = 0.0;
  path.points[0] = {0.0, 0.0};
  for (long long k = 0; k < n; ++k) {
    switch (steps[static_cast<std::size_t>(k)]) {
      case east: x += 1.0; break;
      case west: x -= 1.0; break;
      case north: y += 1.0; break;
      case south: y -= 1.0; break;
    }
    path.points[static_cast<std::size_t>(k) + 1] = {x, y};
  }
  return path;
}

LoopPath sample_path(const BridgeSpec& spec) {
  return spec.kind == PathKind::gaussian_bridge ? sample_gaussian_bridge(spec)
                                                : sample_lattice_loop(spec);
}

std::size_t lowest_vertex_index(const LoopPath& path) {
  if (!path.closed()) throw std::invalid_argument("path is not closed");
  std::size_t best = 0;
  for (std::size_t k = 1; k + 1 < path.points.size(); ++k) {
    if (path.points[k].y < path.points[best].y) best = k;
  }
  return best;
}

LoopPath vervaat_transform(const LoopPath& path) {
  const std::size_t n = path.points.size() - 1;
  const std::size_t base = lowest_vertex_index(path);
  const PlanarPoint c = path.points[base];
  LoopPath out;
  out.kind = path.kind;
  out.points.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const PlanarPoint& p = path.points[(base + k) % n];
    out.points[k] = {p.x - c.x, p.y - c.y};
  }
  return out;
}

}  // namespace loophull
