#pragma once

#include "rejsamp/boolfn.hpp"
#include "rejsamp/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace rejsamp {

struct JuntaSpec {
    enum class Kind { ParityOverM, EdgeParity };
    Kind kind = Kind::ParityOverM;
    int j1 = 0, j2 = 0; // variables (global labels), j1 < j2
    std::uint8_t r = 0;
    friend bool operator==(const JuntaSpec&, const JuntaSpec&) = default;
};

// Projection x|_M packed into words; bit (m-1-t) of the big integer is x at the t-th smallest
// element of M, so the smallest element of M is the most significant bit.
using ProjectionKey = std::vector<std::uint64_t>;

// 1 + binary value of x|_M (smallest element of M most significant). Requires |M| <= 63.
std::uint64_t gamma_M(const BitVec& x, const std::vector<int>& M);

// f(x) = h_{Gamma_M(x)}(x). The graph lives on Mbar; its local vertex t is the t-th smallest
// element of Mbar. Subfunctions are generated per index from (seed, index) and memoized.
class JuntaInstance {
public:
    JuntaInstance(int n, std::vector<int> M, std::vector<int> A, GraphFamily family, std::uint64_t seed);
    static JuntaInstance sample(int n, GraphFamily family, std::uint64_t seed);

    JuntaInstance(const JuntaInstance& o);
    JuntaInstance& operator=(const JuntaInstance&) = delete;

    int n() const { return n_; }
    int m() const { return static_cast<int>(M_.size()); }
    const std::vector<int>& M() const { return M_; }
    const std::vector<int>& Mbar() const { return Mbar_; }
    const std::vector<int>& A() const { return A_; }
    GraphFamily family() const { return family_; }
    std::uint64_t seed() const { return seed_; }
    const Graph& local_graph() const { return local_; } // on 1..|Mbar|
    int global_vertex(int local) const { return Mbar_[local - 1]; }

    ProjectionKey key_of(const BitVec& x) const;
    ProjectionKey key_of_index(std::uint64_t x) const; // n <= 64
    static bool first_half(const ProjectionKey& key, int m);

    // Spec for the subfunction addressed by the key. Thread-safe; the same key always yields the same spec.
    JuntaSpec subfunction(const ProjectionKey& key) const;
    // 1-based index, for m <= 63.
    JuntaSpec subfunction(std::uint64_t i) const;
    std::size_t memo_size() const;

    std::uint8_t eval(const BitVec& x) const;
    std::uint8_t eval_index(std::uint64_t x) const; // x_j = bit j-1, n <= 64
    BoolFn as_function() const;
    TruthTable table() const;

private:
    std::uint8_t apply(const JuntaSpec& s, const BitVec& x) const;

    int n_;
    std::vector<int> M_, Mbar_, A_;
    GraphFamily family_;
    std::uint64_t seed_;
    Graph local_;
    std::uint64_t sub_key_;
    mutable std::mutex mu_;
    mutable std::map<ProjectionKey, JuntaSpec> memo_;
};

// g = f except on second-half regions whose edge touches S, where g = 0.
BoolFn witness_junta(const JuntaInstance& f, const std::vector<int>& S);
TruthTable witness_junta_table(const JuntaInstance& f, const std::vector<int>& S);
// #{i > N/2 : the edge of h_i touches S}; m <= 24.
std::uint64_t witness_hits(const JuntaInstance& f, const std::vector<int>& S);

// g(x, y) = f(x) xor y_1 xor ... xor y_extra
BoolFn pad_parity(const BoolFn& f, int extra);
TruthTable pad_parity(const TruthTable& f, int extra);
// g(x, y) = f(x)
BoolFn pad_dummy(const BoolFn& f, int extra);
TruthTable pad_dummy(const TruthTable& f, int extra);

// Descriptor: "junta", then lines "n", "M ...", "A ...", "family", "seed".
void write_junta_descriptor(std::ostream& os, const JuntaInstance& f);
std::unique_ptr<JuntaInstance> read_junta_descriptor(std::istream& is);

} // namespace rejsamp
