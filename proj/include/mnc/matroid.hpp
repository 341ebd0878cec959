#pragma once

// Matroids via an independence oracle with four backends: uniform, graphic,
// vector (column matroid of a matrix), and an explicit set family. Rank and
// fundamental circuits work at any ground size; circuit/base enumeration,
// axiom checking, and isomorphism testing scan subsets exhaustively and are
// guarded by caps (arguments, not constants).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "graph.hpp"
#include "matrix.hpp"
#include "util.hpp"

namespace mnc {

class Matroid {
public:
    enum class Kind { Uniform, Graphic, Vector, Explicit };

    int ground_size() const { return ground_; }
    Kind kind() const { return static_cast<Kind>(backend_.index()); }

    // Oracle: is the element set independent? Duplicates are collapsed.
    bool independent(const std::vector<int>& elems) const {
        std::vector<int> s = normalize(elems);
        switch (kind()) {
            case Kind::Uniform:
                return static_cast<int>(s.size()) <= std::get<UniformData>(backend_).rank;
            case Kind::Graphic:
                return edges_acyclic(std::get<GraphicData>(backend_).graph, s);
            case Kind::Vector: {
                const Matrix& m = std::get<VectorData>(backend_).matrix;
                return rank(m.select_columns(s)) == static_cast<int>(s.size());
            }
            case Kind::Explicit: {
                uint32_t mask = 0;
                for (int e : s) mask |= 1u << e;
                const auto& masks = std::get<ExplicitData>(backend_).masks;
                return std::binary_search(masks.begin(), masks.end(), mask);
            }
        }
        return false;
    }

    // Matroid rank of the element set, by greedy extension of an independent
    // subset in ascending element order.
    int rank_of(const std::vector<int>& elems) const {
        std::vector<int> picked;
        for (int e : normalize(elems)) {
            picked.push_back(e);
            if (!independent(picked)) picked.pop_back();
        }
        return static_cast<int>(picked.size());
    }

    int rank_full() const {
        std::vector<int> all(ground_);
        std::iota(all.begin(), all.end(), 0);
        return rank_of(all);
    }

    const Graph& graph() const { return std::get<GraphicData>(backend_).graph; }
    const Matrix& matrix() const { return std::get<VectorData>(backend_).matrix; }
    int uniform_rank() const { return std::get<UniformData>(backend_).rank; }
    std::vector<std::vector<int>> explicit_sets() const {
        std::vector<std::vector<int>> out;
        for (uint32_t mask : std::get<ExplicitData>(backend_).masks) {
            std::vector<int> s;
            for (int e = 0; e < ground_; ++e)
                if (mask >> e & 1) s.push_back(e);
            out.push_back(std::move(s));
        }
        return out;
    }

    static Matroid make_uniform(int c, int d) {
        if (c < 0 || d < 0 || c > d) throw std::invalid_argument("uniform matroid needs 0 <= c <= d");
        return Matroid(d, UniformData{c});
    }

    static Matroid make_graphic(Graph g) {
        g.check();
        const int ground = g.edge_count();
        return Matroid(ground, GraphicData{std::move(g)});
    }

    static Matroid make_vector(Matrix m) {
        const int ground = static_cast<int>(m.cols());
        return Matroid(ground, VectorData{std::move(m)});
    }

    static Matroid make_explicit(int ground, const std::vector<std::vector<int>>& sets) {
        if (ground < 0 || ground > 31) throw std::invalid_argument("explicit family limited to ground size 31");
        ExplicitData data;
        for (const auto& s : sets) {
            uint32_t mask = 0;
            for (int e : s) {
                if (e < 0 || e >= ground) throw std::out_of_range("element out of range in explicit family");
                mask |= 1u << e;
            }
            data.masks.push_back(mask);
        }
        std::sort(data.masks.begin(), data.masks.end());
        data.masks.erase(std::unique(data.masks.begin(), data.masks.end()), data.masks.end());
        return Matroid(ground, std::move(data));
    }

private:
    struct UniformData { int rank; };
    struct GraphicData { Graph graph; };
    struct VectorData { Matrix matrix; };
    struct ExplicitData { std::vector<uint32_t> masks; };

    template <class Data>
    Matroid(int ground, Data data) : ground_(ground), backend_(std::move(data)) {}

    std::vector<int> normalize(const std::vector<int>& elems) const {
        std::vector<int> s = elems;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int e : s)
            if (e < 0 || e >= ground_) throw std::out_of_range("element " + std::to_string(e) + " out of range");
        return s;
    }

    int ground_;
    std::variant<UniformData, GraphicData, VectorData, ExplicitData> backend_;
};

inline Matroid uniform_matroid(int c, int d) { return Matroid::make_uniform(c, d); }
inline Matroid graphic_matroid(Graph g) { return Matroid::make_graphic(std::move(g)); }
inline Matroid vector_matroid(Matrix m) { return Matroid::make_vector(std::move(m)); }
inline Matroid explicit_matroid(int ground, const std::vector<std::vector<int>>& sets) {
    return Matroid::make_explicit(ground, sets);
}

namespace detail {

inline void require_enumerable(const Matroid& m, int cap, const char* what) {
    if (m.ground_size() > cap)
        throw std::runtime_error(std::string(what) + " needs ground size <= " + std::to_string(cap) +
                                 " (got " + std::to_string(m.ground_size()) +
                                 "); use the independence oracle directly");
}

inline std::vector<int> mask_to_set(uint32_t mask, int n) {
    std::vector<int> s;
    for (int e = 0; e < n; ++e)
        if (mask >> e & 1) s.push_back(e);
    return s;
}

// Raw per-subset oracle table; no closure shortcuts, so it is faithful even
// for explicit families that fail the matroid axioms.
inline std::vector<char> independence_table(const Matroid& m) {
    const int n = m.ground_size();
    std::vector<char> table(size_t{1} << n);
    for (uint32_t mask = 0; mask < table.size(); ++mask)
        table[mask] = m.independent(mask_to_set(mask, n));
    return table;
}

}  // namespace detail

// Minimal dependent sets, in lexicographic order of their sorted element lists.
inline std::vector<std::vector<int>> circuits(const Matroid& m, int cap = 16) {
    detail::require_enumerable(m, cap, "circuit enumeration");
    const int n = m.ground_size();
    const std::vector<char> indep = detail::independence_table(m);
    std::vector<std::vector<int>> out;
    for (uint32_t mask = 1; mask < indep.size(); ++mask) {
        if (indep[mask]) continue;
        bool minimal = true;
        for (int e = 0; e < n && minimal; ++e)
            if (mask >> e & 1) minimal = indep[mask & ~(1u << e)];
        if (minimal) out.push_back(detail::mask_to_set(mask, n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Maximal independent sets; in a matroid these are the independent sets of
// full rank. Lexicographic order.
inline std::vector<std::vector<int>> bases(const Matroid& m, int cap = 16) {
    detail::require_enumerable(m, cap, "base enumeration");
    const int n = m.ground_size();
    const int r = m.rank_full();
    const std::vector<char> indep = detail::independence_table(m);
    std::vector<std::vector<int>> out;
    for (uint32_t mask = 0; mask < indep.size(); ++mask)
        if (indep[mask] && std::popcount(mask) == r) out.push_back(detail::mask_to_set(mask, n));
    std::sort(out.begin(), out.end());
    return out;
}

// The lexicographically smallest base: greedy in ascending element order.
inline std::vector<int> lex_smallest_base(const Matroid& m) {
    std::vector<int> base;
    for (int e = 0; e < m.ground_size(); ++e) {
        base.push_back(e);
        if (!m.independent(base)) base.pop_back();
    }
    return base;
}

// The unique circuit inside base + {e}, for e outside the base.
inline std::vector<int> fundamental_circuit(const Matroid& m, const std::vector<int>& base, int e) {
    if (!m.independent(base) || static_cast<int>(base.size()) != m.rank_full())
        throw std::invalid_argument("fundamental_circuit requires a base");
    if (std::find(base.begin(), base.end(), e) != base.end())
        throw std::invalid_argument("element already in the base");
    std::vector<int> set = base;
    set.push_back(e);
    std::sort(set.begin(), set.end());
    // Peel elements whose removal keeps the set dependent; the survivor is
    // the unique circuit through e.
    for (size_t i = 0; i < set.size();) {
        std::vector<int> without = set;
        without.erase(without.begin() + i);
        if (!m.independent(without))
            set = std::move(without);
        else
            ++i;
    }
    return set;
}

struct AxiomReport {
    bool ok = true;
    std::string violation;
};

// Exhaustive check of the independence axioms: empty set independent,
// downward closure, and the exchange property.
inline AxiomReport verify_axioms(const Matroid& m, int cap = 10) {
    detail::require_enumerable(m, cap, "axiom verification");
    const int n = m.ground_size();
    const std::vector<char> indep = detail::independence_table(m);
    if (!indep[0]) return {false, "empty set is not independent"};
    for (uint32_t mask = 1; mask < indep.size(); ++mask) {
        if (!indep[mask]) continue;
        for (int e = 0; e < n; ++e)
            if ((mask >> e & 1) && !indep[mask & ~(1u << e)])
                return {false, "downward closure violated: " + join_ints(detail::mask_to_set(mask, n)) +
                                   " independent but " + join_ints(detail::mask_to_set(mask & ~(1u << e), n)) +
                                   " dependent"};
    }
    for (uint32_t m1 = 0; m1 < indep.size(); ++m1) {
        if (!indep[m1]) continue;
        for (uint32_t m2 = 0; m2 < indep.size(); ++m2) {
            if (!indep[m2] || std::popcount(m1) >= std::popcount(m2)) continue;
            bool extended = false;
            for (int e = 0; e < n && !extended; ++e)
                if ((m2 >> e & 1) && !(m1 >> e & 1)) extended = indep[m1 | (1u << e)];
            if (!extended)
                return {false, "exchange violated for I1=" + join_ints(detail::mask_to_set(m1, n)) +
                                   ", I2=" + join_ints(detail::mask_to_set(m2, n))};
        }
    }
    return {};
}

// Brute-force isomorphism: some bijection of ground sets carries one
// independence family onto the other.
inline bool are_isomorphic(const Matroid& a, const Matroid& b, int cap = 8) {
    if (a.ground_size() != b.ground_size()) return false;
    detail::require_enumerable(a, cap, "isomorphism testing");
    const int n = a.ground_size();
    const std::vector<char> ta = detail::independence_table(a);
    const std::vector<char> tb = detail::independence_table(b);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool match = true;
        for (uint32_t mask = 0; mask < ta.size() && match; ++mask) {
            uint32_t mapped = 0;
            for (int e = 0; e < n; ++e)
                if (mask >> e & 1) mapped |= 1u << perm[e];
            match = (ta[mask] == tb[mapped]);
        }
        if (match) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace mnc
