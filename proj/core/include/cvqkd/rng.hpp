#pragma once

#include <array>
#include <cstdint>

namespace cvqkd {

// Philox4x32-10 counter-based generator (Salmon-Moraes-Dror-Shaw
// constants). Purely functional: output depends only on (counter, key),
// which is what makes parallel sample generation deterministic.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// 53-bit uniform: ((u64 >> 11) + 0.5) * 2^-53. The lower end is exactly
// 2^-54, never 0; the upper end 1 - 2^-54 is not representable and rounds
// to 1.0, which the Box-Muller radius absorbs (log 1 = 0).
double uniform_from_u32_pair(std::uint32_t hi, std::uint32_t lo);

struct NormalPair {
  double z0 = 0.0;  // cos branch
  double z1 = 0.0;  // sin branch
};

// Box-Muller on the block keyed by (seed, stream, index). Blocks never
// overlap across indices or streams.
NormalPair normals_for_index(std::uint64_t seed, std::uint64_t index,
                             std::uint32_t stream);

}  // namespace cvqkd
