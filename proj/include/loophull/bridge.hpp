#pragma once

#include <cstddef>
#include <cstdint>

#include "loophull/geometry.hpp"

namespace loophull {

struct BridgeSpec {
  int steps = 2;
  std::uint64_t seed = 0;
  PathKind kind = PathKind::gaussian_bridge;
};

// Planar Brownian bridge on the uniform time grid t_k = k/N:
// points[k] = W_k - (k/N) W_N with W a Gaussian walk whose increments have
// variance 1/N per coordinate. The bridge law at grid times is exact.
LoopPath sample_gaussian_bridge(const BridgeSpec& spec);

// Uniformly random closed simple-random-walk loop of length N (N even) on
// the square lattice: the horizontal step count h is drawn from its exact
// conditioned distribution, weight(h) = C(N,h) C(h,h/2) C(N-h,(N-h)/2) over
// even h, then the balanced step multiset is uniformly shuffled.
LoopPath sample_lattice_loop(const BridgeSpec& spec);

LoopPath sample_path(const BridgeSpec& spec);

// Index in [0, N) of the lowest vertex (minimal y); ties take the smallest
// index. The closing duplicate vertex N is not considered.
std::size_t lowest_vertex_index(const LoopPath& path);

// Cyclic shift restarting the loop at its lowest point:
// Z_k = points[(t̄+k) mod N] - points[t̄]. Output starts at (0,0) and has
// y >= 0 everywhere, with min y == 0 attained at index 0.
LoopPath vervaat_transform(const LoopPath& path);

}  // namespace loophull
