#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adr {

/// One byte per variable, value 0 or 1, in canonical registry order.
using BitVector = std::vector<std::uint8_t>;

/// "0101..." with character k holding variable k.
std::string to_bitstring(const BitVector& bits);
BitVector from_bitstring(std::string_view text);

/// Little-endian integer encoding: bit b of `value` is variable b.
BitVector bits_from_integer(std::uint64_t value, std::size_t n);
std::uint64_t integer_from_bits(const BitVector& bits);

}  // namespace adr
