#include "mmot/map_io.hpp"

#include "mmot/number_format.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>

#include "mmot/errors.hpp"

namespace mmot {

namespace {

constexpr char kMagic[4] = {'M', 'M', 'O', 'T'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 8 * 4 + 8;
constexpr std::size_t kRecordSize = 3 * 4 + 8;

void appendU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void appendU64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
}

void appendF64(std::vector<std::uint8_t>& out, double v) {
  appendU64(out, std::bit_cast<std::uint64_t>(v));
}

void appendI32(std::vector<std::uint8_t>& out, std::int32_t v) {
  const auto u = static_cast<std::uint32_t>(v);
  for (int b = 0; b < 4; ++b) {
    out.push_back(static_cast<std::uint8_t>(u >> (8 * b)));
  }
}

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  std::size_t offset() const { return offset_; }
  std::size_t remaining() const { return size_ - offset_; }

  void require(std::size_t bytes, const char* what) const {
    if (remaining() < bytes) {
      throw MapFormatError(offset_, std::string("truncated stream while reading ") +
                                        what);
    }
  }

  void readBytes(void* dst, std::size_t n, const char* what) {
    require(n, what);
    std::memcpy(dst, data_ + offset_, n);
    offset_ += n;
  }

  std::uint16_t readU16(const char* what) {
    require(2, what);
    const std::uint16_t v = static_cast<std::uint16_t>(
        data_[offset_] | (static_cast<std::uint16_t>(data_[offset_ + 1]) << 8));
    offset_ += 2;
    return v;
  }

  std::uint64_t readU64(const char* what) {
    require(8, what);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) {
      v |= static_cast<std::uint64_t>(data_[offset_ + b]) << (8 * b);
    }
    offset_ += 8;
    return v;
  }

  double readF64(const char* what) {
    return std::bit_cast<double>(readU64(what));
  }

  std::int32_t readI32(const char* what) {
    require(4, what);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) {
      v |= static_cast<std::uint32_t>(data_[offset_ + b]) << (8 * b);
    }
    offset_ += 4;
    return static_cast<std::int32_t>(v);
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t offset_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serializeMap(const OccupancyOctree& map) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + kRecordSize * map.nodeCount());
  out.insert(out.end(), kMagic, kMagic + 4);
  appendU16(out, kVersion);
  appendF64(out, map.resolution());
  appendF64(out, map.clampMin());
  appendF64(out, map.clampMax());
  appendF64(out, map.occupancyThreshold());
  appendU64(out, map.nodeCount());
  for (const VoxelKey& key : map.sortedKeys()) {
    appendI32(out, key.i);
    appendI32(out, key.j);
    appendI32(out, key.k);
    appendF64(out, map.findNode(key)->log_odds);
  }
  return out;
}

OccupancyOctree deserializeMap(const std::uint8_t* data, std::size_t size) {
  Reader reader(data, size);

  char magic[4];
  reader.readBytes(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw MapFormatError(0, "bad magic, expected \"MMOT\"");
  }
  const std::size_t version_offset = reader.offset();
  const std::uint16_t version = reader.readU16("version");
  if (version != kVersion) {
    throw MapFormatError(version_offset,
                         "unsupported version " + std::to_string(version));
  }

  const std::size_t resolution_offset = reader.offset();
  const double resolution = reader.readF64("resolution");
  const std::size_t clamp_offset = reader.offset();
  const double clamp_min = reader.readF64("clamp_min");
  const double clamp_max = reader.readF64("clamp_max");
  const double threshold = reader.readF64("occupancy_threshold");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw MapFormatError(resolution_offset, "resolution must be finite and positive");
  }
  if (!std::isfinite(clamp_min) || !std::isfinite(clamp_max) ||
      !std::isfinite(threshold) || !(clamp_min < 0.0 && 0.0 < clamp_max)) {
    throw MapFormatError(clamp_offset, "invalid clamp bounds or threshold");
  }
  const std::uint64_t count = reader.readU64("node count");
  if (count > reader.remaining() / kRecordSize) {
    throw MapFormatError(kHeaderSize - 8, "node count exceeds stream length");
  }

  OccupancyOctree map(resolution, clamp_min, clamp_max, threshold);
  for (std::uint64_t n = 0; n < count; ++n) {
    const std::size_t record_offset = reader.offset();
    VoxelKey key;
    key.i = reader.readI32("node i");
    key.j = reader.readI32("node j");
    key.k = reader.readI32("node k");
    const double log_odds = reader.readF64("node log_odds");
    if (!(log_odds >= clamp_min && log_odds <= clamp_max)) {
      throw MapFormatError(record_offset + 12, "node log-odds outside clamp bounds");
    }
    if (map.findNode(key) != nullptr) {
      throw MapFormatError(record_offset, "duplicate node key");
    }
    map.applyUpdate(key, log_odds);
  }
  if (reader.remaining() != 0) {
    throw MapFormatError(reader.offset(), "trailing bytes after last node record");
  }
  return map;
}

OccupancyOctree deserializeMap(const std::vector<std::uint8_t>& bytes) {
  return deserializeMap(bytes.data(), bytes.size());
}

void writeMapFile(const std::filesystem::path& path, const OccupancyOctree& map) {
  const std::vector<std::uint8_t> bytes = serializeMap(map);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

OccupancyOctree readMapFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) {
    throw IoError("failed reading " + path.string());
  }
  return deserializeMap(bytes);
}

void writeMapText(std::ostream& out, const OccupancyOctree& map) {
  out << "# mmot-map v1\n";
  out << "# resolution " << formatDouble(map.resolution()) << "\n";
  out << "# clamp " << formatDouble(map.clampMin()) << " "
      << formatDouble(map.clampMax()) << "\n";
  out << "# occupancy_threshold " << formatDouble(map.occupancyThreshold()) << "\n";
  out << "# nodes " << map.nodeCount() << "\n";
  out << "# columns: i j k log_odds\n";
  for (const VoxelKey& key : map.sortedKeys()) {
    out << key.i << " " << key.j << " " << key.k << " "
        << formatDouble(map.findNode(key)->log_odds) << "\n";
  }
}

void writeMapTextFile(const std::filesystem::path& path,
                      const OccupancyOctree& map) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  writeMapText(out, map);
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace mmot
