#ifndef MMOT_ERRORS_HPP
#define MMOT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmot {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Rejected input: non-finite values, negative distances, non-unit
/// directions, zero-length rays and similar contract violations.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Probability or log-odds argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Point outside the addressable voxel extent of the map.
class AddressingError : public Error {
 public:
  using Error::Error;
};

/// Scan batches arriving out of tick order.
class SequencingError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or unusable configuration (unknown sensor class, bad rig).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed map stream. Carries the byte offset of the first bad byte.
class MapFormatError : public Error {
 public:
  MapFormatError(std::size_t byte_offset, const std::string& what)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byteOffset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Malformed scenario text. Carries the 1-based line number.
class ScenarioParseError : public Error {
 public:
  ScenarioParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Maps that cannot be compared (e.g. resolution mismatch).
class ComparisonError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures while reading or writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmot

#endif  // MMOT_ERRORS_HPP
