#include "rejsamp/boolfn.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace rejsamp {

TruthTable::TruthTable(int n_vars) : n_(n_vars) {
    if (n_vars < 0 || n_vars > kTableVarCap)
        throw CapacityError("truth tables support at most 24 variables, got " + std::to_string(n_vars));
    words_.assign(n_vars <= 6 ? 1 : (std::size_t{1} << (n_vars - 6)), 0);
}

TruthTable TruthTable::of(const BoolFn& f) {
    TruthTable t(f.n);
    BitVec x(f.n, 0);
    for (std::uint64_t i = 0; i < t.size(); ++i) {
        for (int j = 0; j < f.n; ++j) x[j] = static_cast<std::uint8_t>((i >> j) & 1);
        if (f(x)) t.set(i, true);
    }
    return t;
}

std::uint64_t TruthTable::ones() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

std::string TruthTable::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::uint64_t n_digits = size() < 4 ? 1 : size() / 4;
    std::string s(n_digits, '0');
    for (std::uint64_t k = 0; k < n_digits; ++k) {
        int d = 0;
        for (int b = 0; b < 4; ++b) {
            std::uint64_t x = 4 * k + b;
            if (x < size() && get(x)) d |= 1 << b;
        }
        s[k] = digits[d];
    }
    return s;
}

TruthTable TruthTable::from_hex(int n_vars, const std::string& hex) {
    TruthTable t(n_vars);
    std::uint64_t n_digits = t.size() < 4 ? 1 : t.size() / 4;
    std::string h;
    for (char c : hex)
        if (!std::isspace(static_cast<unsigned char>(c))) h.push_back(c);
    if (h.size() != n_digits)
        throw std::invalid_argument("hex table for n=" + std::to_string(n_vars) + " needs " + std::to_string(n_digits) +
                                    " digits, got " + std::to_string(h.size()));
    for (std::uint64_t k = 0; k < n_digits; ++k) {
        char c = h[k];
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else
            throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
        for (int b = 0; b < 4; ++b) {
            std::uint64_t x = 4 * k + b;
            if (x < t.size())
                t.set(x, (d >> b) & 1);
            else if ((d >> b) & 1)
                throw std::invalid_argument("hex table sets a bit beyond 2^n");
        }
    }
    return t;
}

BitVec index_to_bits(std::uint64_t x, int n) {
    BitVec v(n);
    for (int j = 0; j < n; ++j) v[j] = static_cast<std::uint8_t>((x >> j) & 1);
    return v;
}

std::uint64_t bits_to_index(const BitVec& x) {
    if (x.size() > 64) throw CapacityError("bit string longer than 64 has no index");
    std::uint64_t i = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j]) i |= std::uint64_t{1} << j;
    return i;
}

BoolFn table_function(const TruthTable& t) {
    return {t.n_vars(), [t](const BitVec& x) { return static_cast<std::uint8_t>(t.get(bits_to_index(x))); }};
}

} // namespace rejsamp
