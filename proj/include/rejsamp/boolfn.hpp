#pragma once

#include "rejsamp/common.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rejsamp {

// A queryable Boolean function on n variables.
struct BoolFn {
    int n = 0;
    std::function<std::uint8_t(const BitVec&)> eval;

    std::uint8_t operator()(const BitVec& x) const { return eval(x); }
};

inline constexpr int kTableVarCap = 24;

// Full truth table. Input index x encodes x_j as bit (j-1).
class TruthTable {
public:
    TruthTable() = default;
    explicit TruthTable(int n_vars);

    static TruthTable of(const BoolFn& f);
    template <class F>
    static TruthTable from_index(int n_vars, F&& f) {
        TruthTable t(n_vars);
        for (std::uint64_t x = 0; x < t.size(); ++x)
            if (f(x)) t.set(x, true);
        return t;
    }

    int n_vars() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    bool get(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
    void set(std::uint64_t x, bool v) {
        if (v)
            words_[x >> 6] |= std::uint64_t{1} << (x & 63);
        else
            words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
    }
    std::uint64_t ones() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    // Lowercase hex, one digit per four consecutive inputs: digit k holds inputs
    // 4k..4k+3 with input 4k+b as bit b; digits appear in increasing k.
    std::string to_hex() const;
    static TruthTable from_hex(int n_vars, const std::string& hex);

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

BitVec index_to_bits(std::uint64_t x, int n);
std::uint64_t bits_to_index(const BitVec& x);

BoolFn table_function(const TruthTable& t);

} // namespace rejsamp
