#include <catch2/catch_amalgamated.hpp>

#include "mnc/network.hpp"
#include "oracles.hpp"

using namespace mnc;

namespace {

// Classic butterfly with direct side links: two sources, one bottleneck,
// each receiver wants the message generated on the opposite side.
//   nodes: n1=0 (m1), n2=1 (m2), y=2, n3=3, r1=4 (wants m1), r2=5 (wants m2)
//   edges: e0 n1->y, e1 n2->y, e2 y->n3, e3 n2->r1, e4 n3->r1, e5 n1->r2, e6 n3->r2
Network butterfly() {
    Network net;
    net.alphabet_size = 2;
    net.add_message("m1");
    net.add_message("m2");
    for (const char* name : {"n1", "n2", "y", "n3", "r1", "r2"}) net.add_node(name);
    net.generate(0, 0);
    net.generate(1, 1);
    net.demand(4, 0);
    net.demand(5, 1);
    net.add_edge(0, 2);
    net.add_edge(1, 2);
    net.add_edge(2, 3);
    net.add_edge(1, 4);
    net.add_edge(3, 4);
    net.add_edge(0, 5);
    net.add_edge(3, 5);
    check_network(net);
    return net;
}

Vec vec2(const FieldCtx& f, uint32_t a, uint32_t b) { return {f.element(a), f.element(b)}; }

// Routes each message across the side link and the sum across the bottleneck.
GlobalCode butterfly_code(const FieldCtx& f) {
    GlobalCode code;
    code.ctx = f;
    code.edge_vectors = {vec2(f, 1, 0), vec2(f, 0, 1), vec2(f, 1, 1), vec2(f, 0, 1),
                         vec2(f, 1, 1), vec2(f, 1, 0), vec2(f, 1, 1)};
    code.node_message_vectors[{0, 0}] = vec2(f, 1, 0);
    code.node_message_vectors[{1, 1}] = vec2(f, 0, 1);
    code.node_message_vectors[{4, 0}] = vec2(f, 1, 0);
    code.node_message_vectors[{5, 1}] = vec2(f, 0, 1);
    return code;
}

}  // namespace

TEST_CASE("the butterfly code is valid and meets both demands") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);
    const CodeReport report = validate_code(net, butterfly_code(f2));
    CHECK(report.valid);
    CHECK(report.violations.empty());
    CHECK(report.solution());
    CHECK(report.satisfied == std::set<std::pair<int, int>>{{4, 0}, {5, 1}});
    CHECK(report.unsatisfied.empty());
}

TEST_CASE("forwarding one side through the bottleneck starves the other receiver") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);
    GlobalCode code = butterfly_code(f2);
    code.edge_vectors[2] = vec2(f2, 1, 0);
    code.edge_vectors[4] = vec2(f2, 1, 0);
    code.edge_vectors[6] = vec2(f2, 1, 0);
    const CodeReport report = validate_code(net, code);
    CHECK(report.valid);
    CHECK_FALSE(report.solution());
    CHECK(report.satisfied == std::set<std::pair<int, int>>{{4, 0}});
    CHECK(report.unsatisfied == std::set<std::pair<int, int>>{{5, 1}});
}

TEST_CASE("message output vectors must be standard basis vectors") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);

    GlobalCode bad_source = butterfly_code(f2);
    bad_source.node_message_vectors[{0, 0}] = vec2(f2, 0, 1);
    const CodeReport r1 = validate_code(net, bad_source);
    CHECK_FALSE(r1.valid);
    // the wrong source vector also pushes both of n1's out-edges out of span
    REQUIRE(r1.violations.size() == 3);
    CHECK(r1.violations[0].find("n1:m1") != std::string::npos);

    GlobalCode bad_demand = butterfly_code(f2);
    bad_demand.node_message_vectors[{5, 1}] = vec2(f2, 1, 1);
    const CodeReport r2 = validate_code(net, bad_demand);
    CHECK_FALSE(r2.valid);
    REQUIRE(r2.violations.size() == 1);
    CHECK(r2.violations[0].find("r2:m2") != std::string::npos);
}

TEST_CASE("an edge vector outside its tail's input span is reported") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);
    GlobalCode code = butterfly_code(f2);
    // In(n3) = {e2 = (1,1)}, so (1,0) cannot leave n3
    code.edge_vectors[4] = vec2(f2, 1, 0);
    const CodeReport report = validate_code(net, code);
    CHECK_FALSE(report.valid);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("edge 4") != std::string::npos);
    CHECK(report.violations[0].find("n3") != std::string::npos);
}

TEST_CASE("incomplete codes are rejected up front") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);

    GlobalCode missing_pair = butterfly_code(f2);
    missing_pair.node_message_vectors.erase({5, 1});
    CHECK_THROWS_WITH(validate_code(net, missing_pair),
                      Catch::Matchers::ContainsSubstring("r2:m2"));

    GlobalCode short_vector = butterfly_code(f2);
    short_vector.edge_vectors[3] = {f2.one()};
    CHECK_THROWS_WITH(validate_code(net, short_vector),
                      Catch::Matchers::ContainsSubstring("edge 3"));

    GlobalCode wrong_count = butterfly_code(f2);
    wrong_count.edge_vectors.pop_back();
    CHECK_THROWS_AS(validate_code(net, wrong_count), std::invalid_argument);
}

TEST_CASE("a field smaller than the alphabet invalidates the code") {
    Network net = butterfly();
    net.alphabet_size = 3;
    const FieldCtx f2 = make_field(2, 1);
    const CodeReport report = validate_code(net, butterfly_code(f2));
    CHECK_FALSE(report.valid);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("alphabet") != std::string::npos);
}

TEST_CASE("simulated edge symbols are the inner products with the global vectors") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);
    const GlobalCode code = butterfly_code(f2);
    const SimulationPlan plan = make_simulation_plan(net, code);
    for (uint32_t a0 = 0; a0 < 2; ++a0)
        for (uint32_t a1 = 0; a1 < 2; ++a1) {
            const std::vector<FieldElem> a = {f2.element(a0), f2.element(a1)};
            const Simulation sim = run_simulation(plan, a);
            for (int e = 0; e < net.edge_count(); ++e)
                CHECK(sim.edge_symbols[e] == dot(a, code.edge_vectors[e], f2));
            REQUIRE(sim.decodes.size() == 2);
            CHECK(sim.decodes[0].node == 4);
            CHECK(sim.decodes[0].message == 0);
            CHECK(sim.decodes[0].value == a[0]);
            CHECK(sim.decodes[1].node == 5);
            CHECK(sim.decodes[1].message == 1);
            CHECK(sim.decodes[1].value == a[1]);
        }
    // both messages set: the bottleneck carries their sum, which is zero
    const Simulation sim = run_simulation(plan, {f2.one(), f2.one()});
    CHECK(sim.edge_symbols[2] == f2.zero());
}

TEST_CASE("simulation is linear in the message assignment") {
    const Network net = butterfly();
    const FieldCtx f3 = make_field(3, 1);
    const SimulationPlan plan = make_simulation_plan(net, butterfly_code(f3));
    for (uint32_t a = 0; a < 9; ++a)
        for (uint32_t b = 0; b < 9; ++b) {
            const std::vector<FieldElem> va = {f3.element(a / 3), f3.element(a % 3)};
            const std::vector<FieldElem> vb = {f3.element(b / 3), f3.element(b % 3)};
            const std::vector<FieldElem> vsum = {f3.add(va[0], vb[0]), f3.add(va[1], vb[1])};
            const Simulation sa = run_simulation(plan, va);
            const Simulation sb = run_simulation(plan, vb);
            const Simulation ssum = run_simulation(plan, vsum);
            for (int e = 0; e < net.edge_count(); ++e)
                CHECK(ssum.edge_symbols[e] == f3.add(sa.edge_symbols[e], sb.edge_symbols[e]));
        }
}

TEST_CASE("simulation refuses invalid codes and bad assignments") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);
    GlobalCode bad = butterfly_code(f2);
    bad.edge_vectors[4] = vec2(f2, 1, 0);
    CHECK_THROWS_AS(make_simulation_plan(net, bad), std::invalid_argument);
    const SimulationPlan plan = make_simulation_plan(net, butterfly_code(f2));
    CHECK_THROWS_AS(run_simulation(plan, {f2.one()}), std::invalid_argument);
}

TEST_CASE("validity and satisfaction verdicts match brute-force span checks") {
    // two-hop relay: s -> v -> r, one message
    Network net;
    net.add_message("m1");
    net.add_node("s");
    net.add_node("v");
    net.add_node("r");
    net.generate(0, 0);
    net.demand(2, 0);
    net.add_edge(0, 1);
    net.add_edge(1, 2);
    check_network(net);

    for (const FieldCtx& f : {make_field(2, 1), make_field(3, 1)}) {
        int solutions = 0;
        for (uint32_t v0 = 0; v0 < f.order(); ++v0)
            for (uint32_t v1 = 0; v1 < f.order(); ++v1) {
                GlobalCode code;
                code.ctx = f;
                code.edge_vectors = {{f.element(v0)}, {f.element(v1)}};
                code.node_message_vectors[{0, 0}] = {f.one()};
                code.node_message_vectors[{2, 0}] = {f.one()};
                const CodeReport report = validate_code(net, code);

                const bool valid_brute =
                    oracle::in_span_brute(f, code.edge_vectors[0], {{f.one()}}) &&
                    oracle::in_span_brute(f, code.edge_vectors[1], {code.edge_vectors[0]});
                const bool sat_brute =
                    oracle::in_span_brute(f, {f.one()}, {code.edge_vectors[1]});
                CHECK(report.valid == valid_brute);
                CHECK(report.satisfied.count({2, 0}) == static_cast<size_t>(sat_brute));

                if (report.solution()) {
                    ++solutions;
                    // a true solution decodes the message on every assignment
                    const SimulationPlan plan = make_simulation_plan(net, code);
                    for (uint32_t a = 0; a < f.order(); ++a) {
                        const Simulation sim = run_simulation(plan, {f.element(a)});
                        CHECK(sim.decodes[0].value == f.element(a));
                    }
                }
            }
        // both relay vectors must be nonzero and scaling is free: (q-1)^2
        CHECK(solutions == static_cast<int>((f.order() - 1) * (f.order() - 1)));
    }
}

TEST_CASE("exhaustive search solves the butterfly deterministically") {
    const Network net = butterfly();
    const FieldCtx f2 = make_field(2, 1);
    const auto found = exhaustive_solve(net, f2);
    REQUIRE(found.has_value());
    CHECK(validate_code(net, *found).solution());
    // any solution must push each message into the bottleneck's inputs
    CHECK(found->edge_vectors[0] == vec2(f2, 1, 0));
    CHECK(found->edge_vectors[1] == vec2(f2, 0, 1));

    const auto again = exhaustive_solve(net, f2);
    REQUIRE(again.has_value());
    CHECK(again->edge_vectors == found->edge_vectors);
    CHECK(again->node_message_vectors == found->node_message_vectors);

    SearchOptions parallel;
    parallel.jobs = 4;
    const auto multi = exhaustive_solve(net, f2, parallel);
    REQUIRE(multi.has_value());
    CHECK(multi->edge_vectors == found->edge_vectors);
    CHECK(multi->node_message_vectors == found->node_message_vectors);
}

TEST_CASE("exhaustive search reports infeasible networks") {
    // the second message has no path to the receiver
    Network net;
    net.add_message("m1");
    net.add_message("m2");
    net.add_node("s1");
    net.add_node("s2");
    net.add_node("r");
    net.generate(0, 0);
    net.generate(1, 1);
    net.demand(2, 0);
    net.demand(2, 1);
    net.add_edge(0, 2);
    check_network(net);
    CHECK_FALSE(exhaustive_solve(net, make_field(2, 1)).has_value());
    CHECK_FALSE(exhaustive_solve(net, make_field(2, 2)).has_value());
}

TEST_CASE("exhaustive search handles edgeless networks") {
    Network self;
    self.add_message("m1");
    self.add_node("s");
    self.generate(0, 0);
    self.demand(0, 0);
    check_network(self);
    const auto found = exhaustive_solve(self, make_field(2, 1));
    REQUIRE(found.has_value());
    CHECK(validate_code(self, *found).solution());

    Network cut;
    cut.add_message("m1");
    cut.add_node("s");
    cut.add_node("r");
    cut.generate(0, 0);
    cut.demand(1, 0);
    check_network(cut);
    CHECK_FALSE(exhaustive_solve(cut, make_field(2, 1)).has_value());
}

TEST_CASE("exhaustive search enforces its space cap and field size") {
    const Network net = butterfly();
    SearchOptions opts;
    opts.cap = 100;  // nominal space is 2^14
    CHECK_THROWS_WITH(exhaustive_solve(net, make_field(2, 1), opts),
                      Catch::Matchers::ContainsSubstring("cap"));
    Network big = butterfly();
    big.alphabet_size = 3;
    CHECK_THROWS_AS(exhaustive_solve(big, make_field(2, 1)), std::invalid_argument);
}

TEST_CASE("topological order is deterministic and detects cycles") {
    const Network net = butterfly();
    CHECK(topological_order(net) == std::vector<int>{0, 1, 2, 3, 4, 5});

    Network diamond;
    diamond.add_message("m1");
    diamond.add_node("a");
    diamond.add_node("b");
    diamond.add_node("c");
    diamond.generate(1, 0);
    diamond.add_edge(1, 0);
    diamond.add_edge(1, 2);
    CHECK(topological_order(diamond) == std::vector<int>{1, 0, 2});

    Network loop;
    loop.add_message("m1");
    loop.add_node("u");
    loop.add_node("w");
    loop.generate(0, 0);
    loop.add_edge(0, 1);
    loop.add_edge(1, 0);
    CHECK_THROWS_WITH(topological_order(loop),
                      Catch::Matchers::ContainsSubstring("u -> w -> u"));
    CHECK_THROWS_AS(check_network(loop), std::invalid_argument);
}

TEST_CASE("structural checks catch malformed networks") {
    Network net;
    net.add_message("m1");
    net.add_node("s");
    CHECK_THROWS_WITH(check_network(net), Catch::Matchers::ContainsSubstring("m1"));
    net.generate(0, 0);
    net.alphabet_size = 1;
    CHECK_THROWS_AS(check_network(net), std::invalid_argument);
    CHECK_THROWS_AS(net.add_edge(0, 3), std::out_of_range);
    CHECK_THROWS_AS(net.generate(0, 5), std::out_of_range);
}

TEST_CASE("node inputs list generated messages before in-edges") {
    Network net;
    net.add_message("m1");
    net.add_message("m2");
    net.add_node("a");
    net.add_node("b");
    net.add_node("x");
    net.generate(0, 0);
    net.generate(1, 1);
    net.generate(2, 1);  // inserted out of order on purpose
    net.generate(2, 0);
    net.generate(2, 0);  // duplicate is ignored
    net.add_edge(0, 2);
    net.add_edge(1, 2);
    CHECK(net.generates[2] == std::vector<int>{0, 1});

    const auto in_edges = net.in_edges_by_node();
    const auto entries = in_list(net, 2, in_edges);
    REQUIRE(entries.size() == 4);
    CHECK((entries[0].is_message && entries[0].index == 0));
    CHECK((entries[1].is_message && entries[1].index == 1));
    CHECK((!entries[2].is_message && entries[2].index == 0));
    CHECK((!entries[3].is_message && entries[3].index == 1));
}
