#include "mmot/number_format.hpp"

#include <charconv>
#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {

std::string formatDouble(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parseDouble(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || text.empty()) {
    throw InvalidInputError("not a number: \"" + std::string(text) + "\"");
  }
  return value;
}

long long parseInt(std::string_view text) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || text.empty()) {
    throw InvalidInputError("not an integer: \"" + std::string(text) + "\"");
  }
  return value;
}

unsigned long long parseUnsigned(std::string_view text) {
  unsigned long long value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || text.empty()) {
    throw InvalidInputError("not an unsigned integer: \"" + std::string(text) +
                            "\"");
  }
  return value;
}

}  // namespace mmot
