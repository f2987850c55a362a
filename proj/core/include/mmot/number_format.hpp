#ifndef MMOT_NUMBER_FORMAT_HPP
#define MMOT_NUMBER_FORMAT_HPP

#include <string>
#include <string_view>

namespace mmot {

/// Shortest decimal form that parses back to exactly the same double.
std::string formatDouble(double v);

/// Parses a full string as a double; throws InvalidInputError when the text
/// is not a number or has trailing characters.
double parseDouble(std::string_view text);

/// Parses a full string as a decimal integer with the same strictness.
long long parseInt(std::string_view text);

/// Parses a full string as a non-negative decimal integer up to 2^64 - 1.
unsigned long long parseUnsigned(std::string_view text);

}  // namespace mmot

#endif  // MMOT_NUMBER_FORMAT_HPP
