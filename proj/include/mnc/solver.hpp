#pragma once

// Code synthesis: solve a matroidal network from a matrix representation of
// its matroid, specialized constructions for uniform and graphic matroids,
// and the reverse extraction of a representation from any working code.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "matroidal.hpp"
#include "util.hpp"

namespace mnc {

struct SolveResult {
    GlobalCode code;
    FieldCtx field;                        // field the code uses (possibly enlarged)
    int dummy_messages = 0;                // rank surplus projected out of the vectors
    Matrix normalized{FieldCtx(), 0, 0};   // row-reduced representation, identity first
    std::vector<int> column_of;            // ground element -> column of normalized
};

// Turns a matrix representation of the network's matroid into a scalar-linear
// code: rows are reduced to a basis, the message columns are extended to a
// column basis and moved to the front, and the whole matrix is normalized to
// [I | A']. Each edge or message output then reads its global vector straight
// from its element's column; coordinates beyond the message count belong to
// dummy messages and are projected away. Enlarges the field first when the
// network alphabet does not fit into it.
inline SolveResult solve_representable(const Network& net, const NetworkMatroidMapping& map,
                                       const Matrix& a) {
    {
        const MatroidalReport rep = verify_matroidal(net, vector_matroid(a), map);
        if (!rep.ok)
            throw std::invalid_argument("mapping does not certify the network: " +
                                        rep.violations.front());
    }
    Matrix work = a;
    if (static_cast<int>(work.ctx().order()) < net.alphabet_size) {
        const uint32_t p = work.ctx().characteristic();
        uint32_t l = work.ctx().degree();
        uint64_t q = work.ctx().order();
        while (q < static_cast<uint64_t>(net.alphabet_size)) {
            q *= p;
            ++l;
        }
        work = embedded(embed_field(work.ctx(), make_field(p, l)), work);
    }
    const FieldCtx f = work.ctx();

    // row space basis: the nonzero rows of the reduced matrix
    const RrefResult red = rref(work);
    const int d1 = red.rank();
    Matrix rows(f, d1, work.cols());
    for (int i = 0; i < d1; ++i)
        for (size_t j = 0; j < work.cols(); ++j) rows.at(i, j) = red.reduced.at(i, j);

    const int mu = net.message_count();
    std::vector<int> basis_cols;
    std::vector<char> in_basis(work.cols(), 0);
    std::vector<Vec> basis_vecs;
    for (int m = 0; m < mu; ++m) {
        basis_cols.push_back(map.message_map[m]);
        in_basis[map.message_map[m]] = 1;
        basis_vecs.push_back(rows.column(map.message_map[m]));
    }
    for (size_t j = 0; j < work.cols() && static_cast<int>(basis_cols.size()) < d1; ++j) {
        if (in_basis[j]) continue;
        Vec col = rows.column(j);
        if (in_span(col, basis_vecs, f)) continue;
        basis_cols.push_back(static_cast<int>(j));
        in_basis[j] = 1;
        basis_vecs.push_back(std::move(col));
    }
    std::vector<int> order = basis_cols;
    for (size_t j = 0; j < work.cols(); ++j)
        if (!in_basis[j]) order.push_back(static_cast<int>(j));
    std::vector<int> col_of(work.cols());
    for (size_t k = 0; k < order.size(); ++k) col_of[order[k]] = static_cast<int>(k);

    // the first d1 columns are independent, so this is exactly [I | A']
    Matrix normalized = rref(rows.select_columns(order)).reduced;

    GlobalCode code;
    code.ctx = f;
    const auto vector_of = [&](int elem) {
        Vec v(mu, f.zero());
        for (int i = 0; i < mu; ++i) v[i] = normalized.at(i, col_of[elem]);
        return v;
    };
    for (int e = 0; e < net.edge_count(); ++e)
        code.edge_vectors.push_back(vector_of(map.edge_map[e]));
    for (int x = 0; x < net.node_count(); ++x) {
        for (int m : net.generates[x])
            code.node_message_vectors[{x, m}] = vector_of(map.message_map[m]);
        for (int m : net.demands[x])
            code.node_message_vectors[{x, m}] = vector_of(map.message_map[m]);
    }

    SolveResult out;
    out.code = std::move(code);
    out.field = f;
    out.dummy_messages = d1 - mu;
    out.normalized = std::move(normalized);
    out.column_of = std::move(col_of);
    return out;
}

struct UniformSolve {
    Network net;
    NetworkMatroidMapping mapping;
    SolveResult result;
    Matrix vectors{FieldCtx(), 0, 0};  // the greedy column per ground element
};

// Builds the network of the rank-c uniform matroid on d elements and codes
// it with d vectors of which any c form a basis. The field is the smallest
// power of the characteristic covering both the alphabet and the subset
// count C(d-1, c-1); base elements carry standard basis vectors and every
// further element takes the first vector (in enumeration order) avoiding
// the span of each (c-1)-subset already placed, which the counting bound
// C(k, c-1)(q^{c-1}-1) < q^c - 1 keeps possible.
inline UniformSolve solve_uniform(int c, int d, uint32_t p, int alphabet = 2) {
    if (c < 0 || d < c) throw std::invalid_argument("uniform parameters need 0 <= c <= d");
    uint64_t bound = std::max<uint64_t>(2, static_cast<uint64_t>(alphabet));
    if (c >= 1) bound = std::max(bound, binomial(d - 1, c - 1));
    uint32_t l = 1;
    uint64_t q = p;
    while (q < bound) {
        q *= p;
        ++l;
    }
    const FieldCtx f = make_field(p, l);

    ConstructionConfig cfg;
    cfg.alphabet = alphabet;
    Construction built = construct(uniform_matroid(c, d), cfg);

    std::vector<Vec> columns(d);
    if (c >= 1) {
        // Membership in "some (c-1)-subset's span" is tracked as a bitmap over
        // all q^c vectors, refreshed incrementally: appending a vector v only
        // adds the spans of T u {v} for the (c-2)-subsets T of the vectors
        // already placed. The q^c entries stay small here because q is tied
        // to C(d-1, c-1).
        uint64_t total = 1;
        for (int i = 0; i < c; ++i) {
            if (total > (uint64_t{1} << 32) / q)
                throw std::invalid_argument("vector space too large to enumerate");
            total *= q;
        }
        std::vector<bool> covered(total, false);
        covered[0] = true;  // the zero vector lies in every span

        // the span walks below run q^(c-1) additions per subset, so sums come
        // from a lookup table and every multiplication is hoisted out
        std::vector<uint32_t> add_table;
        if (c >= 2 && q <= 1024) {
            add_table.resize(q * q);
            for (uint64_t a = 0; a < q; ++a)
                for (uint64_t b = 0; b < q; ++b)
                    add_table[a * q + b] = f.add(f.element(a), f.element(b)).value;
        }
        const auto sum = [&](FieldElem a, FieldElem b) {
            return add_table.empty() ? f.add(a, b) : FieldElem{add_table[a.value * q + b.value]};
        };

        std::vector<Vec> placed;
        const auto mark_span = [&](const std::vector<const Vec*>& set) {
            std::vector<std::vector<Vec>> scaled(set.size());
            for (size_t j = 0; j < set.size(); ++j) {
                scaled[j].assign(q, Vec(c, f.zero()));
                for (uint64_t a = 0; a < q; ++a)
                    for (int i = 0; i < c; ++i)
                        scaled[j][a][i] = f.mul(f.element(a), (*set[j])[i]);
            }
            Vec partial(c, f.zero());
            const auto walk = [&](auto&& self, size_t at) -> void {
                if (at == set.size()) {
                    uint64_t index = 0;
                    for (int i = 0; i < c; ++i) index = index * q + partial[i].value;
                    covered[index] = true;
                    return;
                }
                const Vec saved = partial;
                for (uint64_t a = 0; a < q; ++a) {
                    for (int i = 0; i < c; ++i) partial[i] = sum(saved[i], scaled[at][a][i]);
                    self(self, at + 1);
                }
                partial = saved;
            };
            walk(walk, 0);
        };
        const auto place = [&](const Vec& v) {
            if (c >= 2) {
                std::vector<int> sub;
                first_combination(sub, c - 2);
                if (static_cast<int>(placed.size()) >= c - 2) do {
                        std::vector<const Vec*> set{&v};
                        for (int s : sub) set.push_back(&placed[s]);
                        mark_span(set);
                    } while (next_combination(sub, static_cast<int>(placed.size())));
            }
            placed.push_back(v);
        };

        for (size_t i = 0; i < built.base.size(); ++i) {
            columns[built.base[i]] = standard_basis(f, c, i);
            place(columns[built.base[i]]);
        }
        // the first uncovered index never decreases as coverage grows, so the
        // scan resumes where the previous element left off
        uint64_t idx = 1;
        for (int x = 0; x < d; ++x) {
            if (!columns[x].empty()) continue;
            // idx stays below q^c: a free vector exists by the counting bound
            while (covered[idx]) ++idx;
            columns[x] = vector_from_index(f, c, idx);
            place(columns[x]);
        }
    }
    // c = 0: every element is a loop; the columns are the empty vectors of F^0

    UniformSolve out;
    out.vectors = Matrix::from_columns(f, c, columns);
    out.result = solve_representable(built.net, built.mapping, out.vectors);
    out.net = std::move(built.net);
    out.mapping = std::move(built.mapping);
    return out;
}

struct GraphicSolve {
    Network net;
    NetworkMatroidMapping mapping;
    SolveResult result;
    SpanningForest forest;
    Matrix vectors{FieldCtx(), 0, 0};  // one column per graph edge
};

// Codes the network of a graphic matroid over characteristic 2: the BFS
// spanning forest's edges become the base (messages), each tree edge carries
// a standard basis vector, and each chord carries the sum over its
// fundamental cycle, so vectors cancel around every cycle. Self-loops get
// zero columns and never appear in the network.
inline GraphicSolve solve_graphic(const Graph& g, int alphabet = 2) {
    g.check();
    uint32_t l = 1;
    uint64_t q = 2;
    while (q < static_cast<uint64_t>(std::max(2, alphabet))) {
        q *= 2;
        ++l;
    }
    const FieldCtx f = make_field(2, l);

    const SpanningForest forest = bfs_spanning_forest(g);
    const int rank = static_cast<int>(forest.tree_edges.size());
    ConstructionConfig cfg;
    cfg.alphabet = alphabet;
    cfg.base = forest.tree_edges;  // message i is tree edge i, in discovery order
    Construction built = construct(graphic_matroid(g), cfg);

    std::vector<int> tree_pos(g.edge_count(), -1);
    for (int i = 0; i < rank; ++i) tree_pos[forest.tree_edges[i]] = i;
    std::vector<Vec> columns(g.edge_count(), Vec(rank, f.zero()));
    for (int e = 0; e < g.edge_count(); ++e) {
        if (tree_pos[e] >= 0) {
            columns[e][tree_pos[e]] = f.one();
            continue;
        }
        for (int t : fundamental_cycle(g, forest, e)) columns[e][tree_pos[t]] = f.one();
    }

    GraphicSolve out;
    out.vectors = Matrix::from_columns(f, rank, columns);
    out.result = solve_representable(built.net, built.mapping, out.vectors);
    out.net = std::move(built.net);
    out.mapping = std::move(built.mapping);
    out.forest = forest;
    return out;
}

struct Extraction {
    Matrix matrix{FieldCtx(), 0, 0};
    NetworkMatroidMapping mapping;
};

// Reads a matroid representation back out of a working code: one column per
// message (the standard basis) followed by one column per edge vector, edges
// ordered by topological position of their tails, then edge id.
inline Extraction extract_representable(const Network& net, const GlobalCode& code) {
    const CodeReport report = validate_code(net, code);
    if (!report.solution()) {
        std::string why = report.valid ? "an unsatisfied demand remains"
                                       : report.violations.front();
        throw std::invalid_argument("code is not a full solution: " + why);
    }
    const auto topo = topological_order(net);
    std::vector<int> pos(net.node_count());
    for (size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = static_cast<int>(i);
    std::vector<int> order(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(pos[net.edges[a].tail], a) < std::pair(pos[net.edges[b].tail], b);
    });

    const int mu = net.message_count();
    Extraction out;
    std::vector<Vec> columns;
    for (int m = 0; m < mu; ++m) {
        columns.push_back(standard_basis(code.ctx, mu, m));
        out.mapping.message_map.push_back(m);
    }
    out.mapping.edge_map.resize(net.edge_count());
    for (size_t k = 0; k < order.size(); ++k) {
        out.mapping.edge_map[order[k]] = mu + static_cast<int>(k);
        columns.push_back(code.edge_vectors[order[k]]);
    }
    out.matrix = Matrix::from_columns(code.ctx, mu, columns);
    return out;
}

}  // namespace mnc
