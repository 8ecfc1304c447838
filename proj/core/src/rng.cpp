#include "cvqkd/rng.hpp"

#include <cmath>
#include <numbers>

namespace cvqkd {

namespace {

constexpr std::uint64_t kM0 = 0xD2511F53;
constexpr std::uint64_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> x,
                                           std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    const std::uint64_t p0 = kM0 * x[0];
    const std::uint64_t p1 = kM1 * x[2];
    x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0],
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1],
         static_cast<std::uint32_t>(p0)};
  }
  return x;
}

double uniform_from_u32_pair(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t u64 = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(u64 >> 11) + 0.5) * 0x1p-53;
}

NormalPair normals_for_index(std::uint64_t seed, std::uint64_t index,
                             std::uint32_t stream) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(index),
      static_cast<std::uint32_t>(index >> 32), stream, 0};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto r = philox4x32_10(ctr, key);
  const double u1 = uniform_from_u32_pair(r[0], r[1]);
  const double u2 = uniform_from_u32_pair(r[2], r[3]);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

}  // namespace cvqkd
