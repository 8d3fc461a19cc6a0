#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rejsamp {

// Bit strings are stored one value per byte; variable j (1-indexed) lives at x[j-1].
using BitVec = std::vector<std::uint8_t>;

// Raised when an exact routine is asked for an instance beyond its enumeration cap.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

inline int ceil_log2(std::uint64_t n) {
    int k = 0;
    while ((std::uint64_t{1} << k) < n) ++k;
    return k;
}

inline int isqrt_floor(std::uint64_t n) {
    std::uint64_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return static_cast<int>(r);
}

inline int isqrt_ceil(std::uint64_t n) {
    int r = isqrt_floor(n);
    return static_cast<std::uint64_t>(r) * r == n ? r : r + 1;
}

BitVec bits_from_string(std::string_view s);
std::string bits_to_string(const BitVec& x);

} // namespace rejsamp
