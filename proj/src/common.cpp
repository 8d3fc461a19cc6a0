#include "rejsamp/common.hpp"
#include "rejsamp/fraction.hpp"
#include "rejsamp/rng.hpp"

#include <algorithm>

namespace rejsamp {

BitVec bits_from_string(std::string_view s) {
    BitVec x;
    x.reserve(s.size());
    for (char c : s) {
        if (c == '0' || c == '1')
            x.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c == '\r' || c == ' ' || c == '\t')
            continue;
        else
            throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
    }
    return x;
}

std::string bits_to_string(const BitVec& x) {
    std::string s(x.size(), '0');
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) s[i] = '1';
    return s;
}

Fraction parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Fraction(std::stoull(s), 1);
    return Fraction(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
}

std::vector<int> sample_subset(Stream& rng, int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("subset size out of range");
    // partial Fisher-Yates over 1..n
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    for (int i = 0; i < k; ++i) {
        auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<int> sample_subset_of(Stream& rng, const std::vector<int>& pool, int k) {
    auto idx = sample_subset(rng, static_cast<int>(pool.size()), k);
    std::vector<int> out;
    out.reserve(k);
    for (int i : idx) out.push_back(pool[i - 1]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rejsamp
