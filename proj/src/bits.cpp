#include "adr/bits.hpp"

#include <fmt/format.h>

#include "adr/errors.hpp"

namespace adr {

std::string to_bitstring(const BitVector& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) s[k] = '1';
  return s;
}

BitVector from_bitstring(std::string_view text) {
  BitVector bits(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '1') bits[k] = 1;
    else if (text[k] != '0')
      throw ParseError(fmt::format("bitstring has '{}' at position {}", text[k], k));
  }
  return bits;
}

BitVector bits_from_integer(std::uint64_t value, std::size_t n) {
  if (n < 64 && (value >> n) != 0)
    throw InvalidArgument(fmt::format("state {} does not fit in {} variables", value, n));
  BitVector bits(n);
  for (std::size_t b = 0; b < n && b < 64; ++b) bits[b] = static_cast<std::uint8_t>((value >> b) & 1U);
  return bits;
}

std::uint64_t integer_from_bits(const BitVector& bits) {
  if (bits.size() > 64) throw InvalidArgument("integer encoding limited to 64 variables");
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < bits.size(); ++b)
    if (bits[b]) v |= std::uint64_t{1} << b;
  return v;
}

}  // namespace adr
