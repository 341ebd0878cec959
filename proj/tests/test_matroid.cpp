#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mnc/matroid.hpp"
#include "oracles.hpp"

using namespace mnc;

namespace {

Graph triangle() { return Graph{3, {{0, 1}, {1, 2}, {0, 2}}}; }

Graph k4() { return Graph{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c;
    first_combination(c, k);
    if (k > n) return out;
    do out.push_back(c);
    while (next_combination(c, n));
    return out;
}

}  // namespace

TEST_CASE("uniform matroid circuits and bases") {
    const Matroid u24 = uniform_matroid(2, 4);
    CHECK(u24.rank_full() == 2);
    CHECK(circuits(u24) == subsets_of_size(4, 3));
    CHECK(bases(u24) == subsets_of_size(4, 2));

    const Matroid u03 = uniform_matroid(0, 3);
    CHECK(circuits(u03) == subsets_of_size(3, 1));
    CHECK(bases(u03) == std::vector<std::vector<int>>{{}});

    const Matroid u33 = uniform_matroid(3, 3);
    CHECK(circuits(u33).empty());
    CHECK(bases(u33) == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("graphic matroid of the triangle") {
    const Matroid m = graphic_matroid(triangle());
    CHECK(m.rank_full() == 2);
    CHECK(circuits(m) == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(bases(m) == subsets_of_size(3, 2));
    CHECK(are_isomorphic(m, uniform_matroid(2, 3)));
}

TEST_CASE("self-loops are loops, forests are independent") {
    const Matroid looped = graphic_matroid(Graph{2, {{0, 1}, {1, 1}}});
    CHECK(looped.independent({0}));
    CHECK_FALSE(looped.independent({1}));
    CHECK(circuits(looped) == std::vector<std::vector<int>>{{1}});

    const Matroid path = graphic_matroid(Graph{4, {{0, 1}, {1, 2}, {2, 3}}});
    CHECK(path.independent({0, 1, 2}));
    CHECK(path.rank_full() == 3);
}

TEST_CASE("graphic independence agrees with DFS and union-find oracles") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g;
        g.vertex_count = 1 + static_cast<int>(rng() % 5);
        const int e_count = static_cast<int>(rng() % 7);
        for (int e = 0; e < e_count; ++e)
            g.edges.push_back({static_cast<int>(rng() % g.vertex_count),
                               static_cast<int>(rng() % g.vertex_count)});
        const Matroid m = graphic_matroid(g);
        for (uint32_t mask = 0; mask < (1u << e_count); ++mask) {
            std::vector<int> subset;
            for (int e = 0; e < e_count; ++e)
                if (mask >> e & 1) subset.push_back(e);
            const bool got = m.independent(subset);
            CHECK(got == oracle::edge_subset_acyclic_dfs(g.vertex_count, g.edges, subset));
            CHECK(got == oracle::edge_subset_acyclic_uf(g.vertex_count, g.edges, subset));
        }
    }
}

TEST_CASE("vector matroid of [I2 | (1,1)] matches U_{2,3}") {
    const FieldCtx f2 = make_field(2, 1);
    Matrix a(f2, 2, 3);
    a.at(0, 0) = a.at(1, 1) = a.at(0, 2) = a.at(1, 2) = f2.one();
    const Matroid m = vector_matroid(a);
    CHECK(are_isomorphic(m, uniform_matroid(2, 3)));
    CHECK(circuits(m) == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("zero columns are loops in vector matroids") {
    const FieldCtx f2 = make_field(2, 1);
    Matrix a(f2, 2, 2);
    a.at(0, 0) = f2.one();
    const Matroid m = vector_matroid(a);
    CHECK_FALSE(m.independent({1}));
    CHECK(circuits(m) == std::vector<std::vector<int>>{{1}});
}

TEST_CASE("no 2x4 GF(2) matrix has the U_{2,4} independence family") {
    const FieldCtx f2 = make_field(2, 1);
    const Matroid u24 = uniform_matroid(2, 4);
    for (uint32_t bits = 0; bits < 256; ++bits) {
        Matrix a(f2, 2, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 4; ++j) a.at(i, j) = f2.element(bits >> (i * 4 + j) & 1);
        const Matroid m = vector_matroid(a);
        bool same = true;
        for (uint32_t mask = 0; mask < 16 && same; ++mask) {
            std::vector<int> s;
            for (int e = 0; e < 4; ++e)
                if (mask >> e & 1) s.push_back(e);
            same = (m.independent(s) == u24.independent(s));
        }
        // U_{2,4} is permutation-symmetric, so family equality is the same
        // as isomorphism here.
        CHECK_FALSE(same);
    }
}

TEST_CASE("rank_of computes subset ranks") {
    const Matroid m = graphic_matroid(k4());
    CHECK(m.rank_full() == 3);
    CHECK(m.rank_of({0, 1}) == 2);
    CHECK(m.rank_of({0, 1, 3}) == 2);  // edges 01, 02, 12 form a triangle
    CHECK(m.rank_of({}) == 0);
    CHECK_THROWS_AS(m.rank_of({9}), std::out_of_range);
}

TEST_CASE("fundamental circuits") {
    const Matroid u24 = uniform_matroid(2, 4);
    CHECK(fundamental_circuit(u24, {0, 1}, 2) == std::vector<int>{0, 1, 2});

    // K4 with the star base at vertex 0: adding edge {1,2} (id 3) closes the
    // triangle with edges 01 (id 0) and 02 (id 1).
    const Matroid mk4 = graphic_matroid(k4());
    CHECK(fundamental_circuit(mk4, {0, 1, 2}, 3) == std::vector<int>{0, 1, 3});

    CHECK_THROWS_AS(fundamental_circuit(u24, {0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_circuit(u24, {0, 1}, 1), std::invalid_argument);
}

TEST_CASE("lex smallest base") {
    CHECK(lex_smallest_base(uniform_matroid(2, 4)) == std::vector<int>{0, 1});
    CHECK(lex_smallest_base(graphic_matroid(k4())) == std::vector<int>{0, 1, 2});
    CHECK(lex_smallest_base(uniform_matroid(0, 3)).empty());
}

TEST_CASE("axioms hold for genuine matroids") {
    CHECK(verify_axioms(uniform_matroid(2, 4)).ok);
    CHECK(verify_axioms(graphic_matroid(k4())).ok);
    const FieldCtx f3 = make_field(3, 1);
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a(f3, 3, 5);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 5; ++j) a.at(i, j) = f3.element(rng() % 3);
        CHECK(verify_axioms(vector_matroid(a)).ok);
    }
}

TEST_CASE("axiom violations are reported") {
    // Missing empty set.
    CHECK_FALSE(verify_axioms(explicit_matroid(2, {{0}})).ok);
    // Downward closure broken: {0,1} in, {1} missing.
    const AxiomReport down = verify_axioms(explicit_matroid(2, {{}, {0}, {0, 1}}));
    CHECK_FALSE(down.ok);
    CHECK(down.violation.find("downward") != std::string::npos);
    // Exchange broken: two maximal sets of different sizes.
    const AxiomReport ex = verify_axioms(explicit_matroid(3, {{}, {0}, {1}, {2}, {1, 2}}));
    CHECK_FALSE(ex.ok);
    CHECK(ex.violation.find("exchange") != std::string::npos);
}

TEST_CASE("isomorphism distinguishes matroids") {
    CHECK(are_isomorphic(uniform_matroid(2, 4), uniform_matroid(2, 4)));
    CHECK_FALSE(are_isomorphic(uniform_matroid(2, 4), uniform_matroid(3, 4)));
    CHECK_FALSE(are_isomorphic(uniform_matroid(2, 4), uniform_matroid(2, 3)));
    // A relabeled triangle-with-pendant matches itself under permutation.
    const Matroid a = graphic_matroid(Graph{4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}});
    const Matroid b = graphic_matroid(Graph{4, {{2, 3}, {1, 2}, {1, 3}, {0, 1}}});
    CHECK(are_isomorphic(a, b));
}

TEST_CASE("rank function is monotone and submodular on small matroids") {
    const std::vector<Matroid> corpus = {uniform_matroid(2, 5), graphic_matroid(k4()),
                                         graphic_matroid(triangle())};
    for (const Matroid& m : corpus) {
        const int n = m.ground_size();
        for (uint32_t x = 0; x < (1u << n); ++x) {
            for (uint32_t y = 0; y < (1u << n); ++y) {
                const auto set = [&](uint32_t mask) { return detail::mask_to_set(mask, n); };
                const int rx = m.rank_of(set(x)), ry = m.rank_of(set(y));
                const int ru = m.rank_of(set(x | y)), ri = m.rank_of(set(x & y));
                if ((x & y) == x) CHECK(rx <= ry);
                CHECK(ru + ri <= rx + ry);
            }
        }
    }
}

TEST_CASE("enumeration caps are enforced and adjustable") {
    const Matroid big = uniform_matroid(3, 17);
    CHECK_THROWS_AS(circuits(big), std::runtime_error);
    CHECK_NOTHROW(circuits(big, 17));
    CHECK_THROWS_AS(verify_axioms(uniform_matroid(2, 11)), std::runtime_error);
    CHECK(verify_axioms(uniform_matroid(2, 11), 11).ok);
    CHECK_THROWS_AS(are_isomorphic(uniform_matroid(2, 9), uniform_matroid(2, 9)), std::runtime_error);
}
