#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rejsamp {

// Nonnegative exact rational, always stored reduced.
class Fraction {
public:
    constexpr Fraction() = default;
    Fraction(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
        if (den == 0) throw std::invalid_argument("fraction with zero denominator");
        reduce();
    }

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        unsigned __int128 l = static_cast<unsigned __int128>(a.num_) * b.den_;
        unsigned __int128 r = static_cast<unsigned __int128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

private:
    void reduce() {
        std::uint64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

// Parses "p/q" (or a bare integer).
Fraction parse_fraction(const std::string& s);

} // namespace rejsamp
