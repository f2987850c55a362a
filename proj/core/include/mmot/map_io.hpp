#ifndef MMOT_MAP_IO_HPP
#define MMOT_MAP_IO_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "mmot/occupancy_octree.hpp"

namespace mmot {

/// Binary map format "MMOT" version 1, little-endian regardless of host:
///   magic "MMOT" (4 bytes), u16 version, f64 resolution, f64 clamp_min,
///   f64 clamp_max, f64 occupancy_threshold, u64 node count, then one
///   record per node: i32 i, i32 j, i32 k, f64 log_odds.
/// Records are emitted in ascending key order so equal maps serialize to
/// identical bytes. Node update ticks are session-local and not stored.
std::vector<std::uint8_t> serializeMap(const OccupancyOctree& map);

/// Throws MapFormatError (carrying the byte offset of the offending field)
/// for bad magic, unsupported version, truncated or oversized streams,
/// invalid header values, duplicate keys, or out-of-clamp log-odds.
OccupancyOctree deserializeMap(const std::uint8_t* data, std::size_t size);
OccupancyOctree deserializeMap(const std::vector<std::uint8_t>& bytes);

/// Throws IoError on filesystem failures, MapFormatError on malformed input.
void writeMapFile(const std::filesystem::path& path, const OccupancyOctree& map);
OccupancyOctree readMapFile(const std::filesystem::path& path);

/// Diff-friendly text form: '#'-prefixed header comments with the map
/// parameters, then one "i j k log_odds" line per node in ascending key
/// order. Doubles print with shortest round-trip formatting.
void writeMapText(std::ostream& out, const OccupancyOctree& map);
void writeMapTextFile(const std::filesystem::path& path,
                      const OccupancyOctree& map);

}  // namespace mmot

#endif  // MMOT_MAP_IO_HPP
