#ifndef MMOT_VOXEL_KEY_HPP
#define MMOT_VOXEL_KEY_HPP

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <tuple>

#include "mmot/errors.hpp"
#include "mmot/geometry.hpp"

namespace mmot {

/// Integer address of a voxel on the resolution-r grid. Voxel (i, j, k)
/// covers the half-open cube [i*r, (i+1)*r) x [j*r, (j+1)*r) x [k*r, (k+1)*r),
/// so a point on a shared face belongs to the higher-index voxel.
struct VoxelKey {
  std::int32_t i = 0;
  std::int32_t j = 0;
  std::int32_t k = 0;

  bool operator==(const VoxelKey&) const = default;
  auto operator<=>(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& key) const {
    // Pack the three indices disjointly (21 bits each covers the
    // addressable range), then scramble with the splitmix64 finalizer. The
    // pack is injective and the finalizer bijective, so distinct keys never
    // share a 64-bit hash.
    std::uint64_t h =
        ((static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.i)) &
          0x1fffff) << 42) ^
        ((static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.j)) &
          0x1fffff) << 21) ^
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.k)) &
         0x1fffff);
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

inline constexpr std::int32_t kMaxVoxelIndex = (1 << 15) - 1;

/// Floor-convention addressing: index = floor(coordinate / resolution).
/// Throws AddressingError when any index magnitude exceeds 2^15 - 1 and
/// InvalidInputError for non-finite points or non-positive resolution.
inline VoxelKey keyForPoint(const Point3& p, double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidInputError("resolution must be finite and positive");
  }
  if (!p.isFinite()) {
    throw InvalidInputError("point components must be finite");
  }
  const double fi = std::floor(p.x / resolution);
  const double fj = std::floor(p.y / resolution);
  const double fk = std::floor(p.z / resolution);
  if (std::abs(fi) > kMaxVoxelIndex || std::abs(fj) > kMaxVoxelIndex ||
      std::abs(fk) > kMaxVoxelIndex) {
    throw AddressingError("point lies outside the addressable voxel volume");
  }
  return {static_cast<std::int32_t>(fi), static_cast<std::int32_t>(fj),
          static_cast<std::int32_t>(fk)};
}

/// Minimum corner (i*r, j*r, k*r) of the voxel's cube.
inline Point3 voxelMinCorner(const VoxelKey& key, double resolution) {
  return {key.i * resolution, key.j * resolution, key.k * resolution};
}

inline Point3 voxelCenter(const VoxelKey& key, double resolution) {
  return {(key.i + 0.5) * resolution, (key.j + 0.5) * resolution,
          (key.k + 0.5) * resolution};
}

}  // namespace mmot

#endif  // MMOT_VOXEL_KEY_HPP
