#include "toolkit/search/bytes.hpp"

namespace toolkit::search {

// Shared little demo codec: length-1..8 strings decode big-endian to a
// zigzag-signed integer; longer or empty strings are not candidates.
// Prefix-unambiguous because the length is part of the string.
std::optional<long> small_integer_decode(std::span<const unsigned char> s) {
    if (s.empty() || s.size() > 8) return std::nullopt;
    uint64_t acc = 0;
    for (unsigned char b : s) acc = (acc << 8) | b;
    // zigzag: 0,1,2,3,... -> 0,-1,1,-2,...
    long mag = (long)(acc >> 1);
    return (acc & 1) ? -mag - 1 : mag;
}

} // namespace toolkit::search
