#pragma once

// Directed acyclic multigraph networks with messages, sources, and receiver
// demands, plus scalar-linear global codes over a finite field.
//
// Model conventions:
//  - In(x) lists the messages generated by x (ascending message index)
//    followed by the in-edges of x (ascending edge id).
//  - A code assigns a length-|messages| vector to every edge and to every
//    (node, message) pair where the node generates or demands the message;
//    both kinds of pair must carry the message's standard basis vector
//    (the pair is the node's message output, satisfied or not).
//  - The code is valid iff every out-edge vector of x lies in the span of
//    the In(x) vectors; the demand (x, m) is satisfied iff m's standard
//    basis vector lies in that span.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "matrix.hpp"

namespace mnc {

struct NetEdge {
    int tail = -1;
    int head = -1;
    bool operator==(const NetEdge&) const = default;
};

struct Network {
    int alphabet_size = 2;
    std::vector<std::string> messages;            // names; index is identity
    std::vector<std::string> node_names;
    std::vector<std::vector<int>> generates;      // per node, ascending message indices
    std::vector<std::vector<int>> demands;        // per node, ascending message indices
    std::vector<NetEdge> edges;

    bool operator==(const Network&) const = default;

    int node_count() const { return static_cast<int>(node_names.size()); }
    int message_count() const { return static_cast<int>(messages.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    int add_node(std::string name) {
        node_names.push_back(std::move(name));
        generates.emplace_back();
        demands.emplace_back();
        return node_count() - 1;
    }

    int add_message(std::string name) {
        messages.push_back(std::move(name));
        return message_count() - 1;
    }

    void generate(int node, int message) {
        check_pair(node, message);
        insert_sorted(generates[node], message);
    }

    void demand(int node, int message) {
        check_pair(node, message);
        insert_sorted(demands[node], message);
    }

    int add_edge(int tail, int head) {
        if (tail < 0 || tail >= node_count() || head < 0 || head >= node_count())
            throw std::out_of_range("edge endpoint out of range");
        edges.push_back({tail, head});
        return edge_count() - 1;
    }

    std::vector<std::vector<int>> in_edges_by_node() const {
        std::vector<std::vector<int>> in(node_count());
        for (int e = 0; e < edge_count(); ++e) in[edges[e].head].push_back(e);
        return in;
    }

    std::vector<std::vector<int>> out_edges_by_node() const {
        std::vector<std::vector<int>> out(node_count());
        for (int e = 0; e < edge_count(); ++e) out[edges[e].tail].push_back(e);
        return out;
    }

private:
    void check_pair(int node, int message) const {
        if (node < 0 || node >= node_count()) throw std::out_of_range("node out of range");
        if (message < 0 || message >= message_count()) throw std::out_of_range("message out of range");
    }

    static void insert_sorted(std::vector<int>& v, int x) {
        const auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x) v.insert(it, x);
    }
};

// Kahn's algorithm, smallest node id first; on a cycle, throws with the
// node ids of one directed cycle.
inline std::vector<int> topological_order(const Network& net) {
    const int n = net.node_count();
    std::vector<int> indeg(n, 0);
    for (const auto& e : net.edges) ++indeg[e.head];
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    const auto out = net.out_edges_by_node();
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int e : out[v])
            if (--indeg[net.edges[e].head] == 0) ready.push(net.edges[e].head);
    }
    if (static_cast<int>(order.size()) == n) return order;
    // Walk successors among the leftover nodes until one repeats.
    std::vector<char> leftover(n, 0);
    for (int v = 0; v < n; ++v) leftover[v] = 1;
    for (int v : order) leftover[v] = 0;
    int v = 0;
    while (!leftover[v]) ++v;
    std::vector<int> walk;
    std::vector<int> seen_at(n, -1);
    while (seen_at[v] < 0) {
        seen_at[v] = static_cast<int>(walk.size());
        walk.push_back(v);
        for (int e : out[v])
            if (leftover[net.edges[e].head]) {
                v = net.edges[e].head;
                break;
            }
    }
    std::string cycle;
    for (size_t i = seen_at[v]; i < walk.size(); ++i) cycle += net.node_names[walk[i]] + " -> ";
    throw std::invalid_argument("network contains a cycle: " + cycle + net.node_names[v]);
}

// Structural sanity: ranges, acyclicity, alphabet, unique names, and
// generator coverage.
inline void check_network(const Network& net) {
    if (net.alphabet_size < 2) throw std::invalid_argument("alphabet needs at least two symbols");
    if (net.generates.size() != net.node_names.size() || net.demands.size() != net.node_names.size())
        throw std::invalid_argument("per-node lists out of sync");
    {
        std::set<std::string> names(net.node_names.begin(), net.node_names.end());
        if (names.size() != net.node_names.size())
            throw std::invalid_argument("node names must be distinct");
        std::set<std::string> msgs(net.messages.begin(), net.messages.end());
        if (msgs.size() != net.messages.size())
            throw std::invalid_argument("message names must be distinct");
    }
    for (const auto& e : net.edges)
        if (e.tail < 0 || e.tail >= net.node_count() || e.head < 0 || e.head >= net.node_count())
            throw std::invalid_argument("edge endpoint out of range");
    std::vector<char> generated(net.message_count(), 0);
    for (int x = 0; x < net.node_count(); ++x)
        for (int m : net.generates[x]) generated[m] = 1;
    for (int m = 0; m < net.message_count(); ++m)
        if (!generated[m])
            throw std::invalid_argument("message " + net.messages[m] + " is generated by no node");
    topological_order(net);
}

// One entry of In(x): a generated message or an in-edge.
struct InEntry {
    bool is_message = false;
    int index = -1;  // message index or edge id
};

inline std::vector<InEntry> in_list(const Network& net, int node,
                                    const std::vector<std::vector<int>>& in_edges) {
    std::vector<InEntry> entries;
    for (int m : net.generates[node]) entries.push_back({true, m});
    for (int e : in_edges[node]) entries.push_back({false, e});
    return entries;
}

struct GlobalCode {
    FieldCtx ctx;
    std::vector<Vec> edge_vectors;                           // indexed by edge id
    std::map<std::pair<int, int>, Vec> node_message_vectors; // (node, message)
};

struct CodeReport {
    bool valid = true;
    std::vector<std::string> violations;
    std::set<std::pair<int, int>> satisfied;
    std::set<std::pair<int, int>> unsatisfied;

    bool solution() const { return valid && unsatisfied.empty(); }
};

namespace detail {

// Collect the In(x) vectors of an assigned code.
inline std::vector<Vec> in_vectors(const Network& net, const GlobalCode& code, int node,
                                   const std::vector<std::vector<int>>& in_edges) {
    std::vector<Vec> vecs;
    for (const InEntry& entry : in_list(net, node, in_edges)) {
        if (entry.is_message)
            vecs.push_back(code.node_message_vectors.at({node, entry.index}));
        else
            vecs.push_back(code.edge_vectors[entry.index]);
    }
    return vecs;
}

}  // namespace detail

// Checks completeness (throws), the source standard-basis invariant, span
// validity of every out-edge, and which demands are satisfied.
inline CodeReport validate_code(const Network& net, const GlobalCode& code) {
    const size_t mu = net.message_count();
    std::vector<std::string> missing;
    if (code.edge_vectors.size() != static_cast<size_t>(net.edge_count()))
        throw std::invalid_argument("code assigns " + std::to_string(code.edge_vectors.size()) +
                                    " edge vectors for " + std::to_string(net.edge_count()) + " edges");
    for (int e = 0; e < net.edge_count(); ++e)
        if (code.edge_vectors[e].size() != mu) missing.push_back("edge " + std::to_string(e));
    for (int x = 0; x < net.node_count(); ++x) {
        std::set<int> wanted(net.generates[x].begin(), net.generates[x].end());
        wanted.insert(net.demands[x].begin(), net.demands[x].end());
        for (int m : wanted) {
            const auto it = code.node_message_vectors.find({x, m});
            if (it == code.node_message_vectors.end() || it->second.size() != mu)
                missing.push_back(net.node_names[x] + ":" + net.messages[m]);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& s : missing) list += (list.empty() ? "" : ", ") + s;
        throw std::invalid_argument("missing or malformed vector assignments: " + list);
    }

    CodeReport report;
    if (static_cast<int>(code.ctx.order()) < net.alphabet_size) {
        report.valid = false;
        report.violations.push_back("field order " + std::to_string(code.ctx.order()) +
                                    " is smaller than the alphabet size " +
                                    std::to_string(net.alphabet_size));
    }
    const auto in_edges = net.in_edges_by_node();
    const auto out_edges = net.out_edges_by_node();
    for (int x = 0; x < net.node_count(); ++x) {
        for (int m : net.generates[x])
            if (code.node_message_vectors.at({x, m}) != standard_basis(code.ctx, mu, m)) {
                report.valid = false;
                report.violations.push_back("source vector at " + net.node_names[x] + ":" +
                                            net.messages[m] + " is not the standard basis vector");
            }
        for (int m : net.demands[x])
            if (code.node_message_vectors.at({x, m}) != standard_basis(code.ctx, mu, m)) {
                report.valid = false;
                report.violations.push_back("demand vector at " + net.node_names[x] + ":" +
                                            net.messages[m] + " is not the standard basis vector");
            }
        const std::vector<Vec> span_vecs = detail::in_vectors(net, code, x, in_edges);
        for (int e : out_edges[x])
            if (!in_span(code.edge_vectors[e], span_vecs, code.ctx)) {
                report.valid = false;
                report.violations.push_back("edge " + std::to_string(e) + " out of node " +
                                            net.node_names[x] + " is not in the span of In(" +
                                            net.node_names[x] + ")");
            }
        for (int m : net.demands[x]) {
            if (in_span(standard_basis(code.ctx, mu, m), span_vecs, code.ctx))
                report.satisfied.insert({x, m});
            else
                report.unsatisfied.insert({x, m});
        }
    }
    return report;
}

// Precomputed linear forms for repeated simulation of one code: each edge
// symbol and each decoded demand is a fixed combination of message symbols
// and earlier edge symbols.
struct SimulationPlan {
    struct Term {
        bool is_message = false;
        int index = -1;
        FieldElem coeff;
    };
    struct DemandPlan {
        int node = -1;
        int message = -1;
        bool satisfiable = false;
        std::vector<Term> terms;
    };
    FieldCtx ctx;
    int message_count = 0;
    std::vector<int> edge_eval_order;         // edge ids, tails in topological order
    std::vector<std::vector<Term>> edge_terms; // indexed by edge id
    std::vector<DemandPlan> demand_plans;
};

struct DemandDecode {
    int node = -1;
    int message = -1;
    std::optional<FieldElem> value;
};

struct Simulation {
    std::vector<FieldElem> edge_symbols;
    std::vector<DemandDecode> decodes;
};

inline SimulationPlan make_simulation_plan(const Network& net, const GlobalCode& code) {
    const CodeReport report = validate_code(net, code);
    if (!report.valid) {
        std::string why = report.violations.empty() ? "unknown" : report.violations.front();
        throw std::invalid_argument("cannot simulate an invalid code: " + why);
    }
    SimulationPlan plan;
    plan.ctx = code.ctx;
    plan.message_count = net.message_count();
    plan.edge_terms.resize(net.edge_count());

    const auto topo = topological_order(net);
    std::vector<int> pos(net.node_count());
    for (size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = static_cast<int>(i);
    std::vector<int> order(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(pos[net.edges[a].tail], a) < std::pair(pos[net.edges[b].tail], b);
    });
    plan.edge_eval_order = order;

    const auto in_edges = net.in_edges_by_node();
    const auto witness_terms = [&](int node, const Vec& target) -> std::optional<std::vector<SimulationPlan::Term>> {
        const std::vector<InEntry> entries = in_list(net, node, in_edges);
        const std::vector<Vec> vecs = detail::in_vectors(net, code, node, in_edges);
        const auto coeffs = in_span(target, vecs, code.ctx);
        if (!coeffs) return std::nullopt;
        std::vector<SimulationPlan::Term> terms;
        for (size_t i = 0; i < entries.size(); ++i)
            if ((*coeffs)[i] != code.ctx.zero())
                terms.push_back({entries[i].is_message, entries[i].index, (*coeffs)[i]});
        return terms;
    };

    for (int e : order) {
        auto terms = witness_terms(net.edges[e].tail, code.edge_vectors[e]);
        // validate_code above guarantees a witness exists
        plan.edge_terms[e] = std::move(*terms);
    }
    for (int x = 0; x < net.node_count(); ++x)
        for (int m : net.demands[x]) {
            SimulationPlan::DemandPlan dp;
            dp.node = x;
            dp.message = m;
            auto terms = witness_terms(x, standard_basis(code.ctx, net.message_count(), m));
            dp.satisfiable = terms.has_value();
            if (terms) dp.terms = std::move(*terms);
            plan.demand_plans.push_back(std::move(dp));
        }
    return plan;
}

// Propagate one message assignment through the plan: every edge symbol is
// computed locally from its tail's inputs, then demands are decoded from
// their witnesses.
inline Simulation run_simulation(const SimulationPlan& plan, const std::vector<FieldElem>& assignment) {
    if (assignment.size() != static_cast<size_t>(plan.message_count))
        throw std::invalid_argument("assignment must cover every message");
    Simulation sim;
    sim.edge_symbols.assign(plan.edge_terms.size(), plan.ctx.zero());
    const auto eval = [&](const std::vector<SimulationPlan::Term>& terms) {
        FieldElem acc = plan.ctx.zero();
        for (const auto& t : terms) {
            const FieldElem sym = t.is_message ? assignment[t.index] : sim.edge_symbols[t.index];
            acc = plan.ctx.add(acc, plan.ctx.mul(t.coeff, sym));
        }
        return acc;
    };
    for (int e : plan.edge_eval_order) sim.edge_symbols[e] = eval(plan.edge_terms[e]);
    for (const auto& dp : plan.demand_plans) {
        DemandDecode d;
        d.node = dp.node;
        d.message = dp.message;
        if (dp.satisfiable) d.value = eval(dp.terms);
        sim.decodes.push_back(d);
    }
    return sim;
}

inline Simulation simulate(const Network& net, const GlobalCode& code,
                           const std::vector<FieldElem>& assignment) {
    return run_simulation(make_simulation_plan(net, code), assignment);
}

struct SearchOptions {
    uint64_t cap = uint64_t{1} << 24;  // bound on the nominal space q^(edges*messages)
    int jobs = 1;
};

namespace detail {

struct SearchProblem {
    const Network& net;
    const FieldCtx& ctx;
    std::vector<int> edge_order;               // assignment order (tails topological)
    std::vector<std::vector<int>> in_edges;
    std::vector<std::vector<int>> base_pending; // in-degree per node
};

struct SearchState {
    std::vector<Vec> edge_vec;
    std::vector<int> pending_in;
};

// All vectors in the span of the given ones, as (enumeration index, vector),
// sorted by index. Enumerates q^rank combinations of an independent subset.
inline std::vector<std::pair<uint64_t, Vec>> span_elements(const std::vector<Vec>& vecs,
                                                           size_t dim, const FieldCtx& ctx) {
    std::vector<Vec> basis;
    for (const Vec& v : vecs) {
        if (!in_span(v, basis, ctx)) basis.push_back(v);
    }
    std::vector<std::pair<uint64_t, Vec>> out;
    uint64_t total = 1;
    for (size_t i = 0; i < basis.size(); ++i) total *= ctx.order();
    out.reserve(total);
    for (uint64_t t = 0; t < total; ++t) {
        Vec v(dim, ctx.zero());
        uint64_t rest = t;
        for (const Vec& b : basis) {
            const FieldElem coeff = ctx.element(rest % ctx.order());
            rest /= ctx.order();
            if (coeff != ctx.zero())
                for (size_t i = 0; i < dim; ++i) v[i] = ctx.add(v[i], ctx.mul(coeff, b[i]));
        }
        out.push_back({vector_index(ctx, v), std::move(v)});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

inline std::vector<Vec> assigned_in_vectors(const SearchProblem& p, const SearchState& s, int node) {
    std::vector<Vec> vecs;
    const size_t mu = p.net.message_count();
    for (int m : p.net.generates[node]) vecs.push_back(standard_basis(p.ctx, mu, m));
    for (int e : p.in_edges[node]) vecs.push_back(s.edge_vec[e]);
    return vecs;
}

// All demands of the node are inside the span of its (fully assigned) inputs.
inline bool node_demands_ok(const SearchProblem& p, const SearchState& s, int node) {
    if (p.net.demands[node].empty()) return true;
    const std::vector<Vec> vecs = assigned_in_vectors(p, s, node);
    for (int m : p.net.demands[node])
        if (!in_span(standard_basis(p.ctx, p.net.message_count(), m), vecs, p.ctx)) return false;
    return true;
}

// Depth-first over edge positions; candidates per edge are exactly the span
// of the tail's inputs, in vector enumeration order, so the first full
// assignment found is the lexicographically first solution.
inline bool search_dfs(const SearchProblem& p, SearchState& s, size_t level) {
    if (level == p.edge_order.size()) return true;
    const int e = p.edge_order[level];
    const int tail = p.net.edges[e].tail;
    const int head = p.net.edges[e].head;
    const auto candidates =
        span_elements(assigned_in_vectors(p, s, tail), p.net.message_count(), p.ctx);
    for (const auto& [idx, v] : candidates) {
        s.edge_vec[e] = v;
        --s.pending_in[head];
        const bool head_ok = s.pending_in[head] > 0 || node_demands_ok(p, s, head);
        if (head_ok && search_dfs(p, s, level + 1)) return true;
        ++s.pending_in[head];
    }
    return false;
}

}  // namespace detail

// Exhaustive deterministic search for a scalar-linear solution: edge vectors
// are assigned in topological-tail order, each ranging over the span of its
// tail's inputs; dead branches are cut as soon as a receiver's inputs are
// complete. Returns the first solution in enumeration order, or nullopt.
// The nominal search space q^(|edges|*|messages|) must fit the cap; with
// jobs > 1 the top-level branches run in parallel (same result).
inline std::optional<GlobalCode> exhaustive_solve(const Network& net, const FieldCtx& ctx,
                                                  const SearchOptions& opts = {}) {
    if (static_cast<int>(ctx.order()) < net.alphabet_size)
        throw std::invalid_argument("field " + ctx.name() + " is smaller than the alphabet");
    {
        uint64_t space = 1;
        bool over = false;
        for (int i = 0; i < net.edge_count() * net.message_count() && !over; ++i) {
            if (space > opts.cap / ctx.order()) over = true;
            space *= ctx.order();
        }
        if (over || space > opts.cap) {
            const long bits = std::lround(net.edge_count() * net.message_count() *
                                          std::log2(static_cast<double>(ctx.order())));
            throw std::runtime_error(
                "search space of " + std::to_string(net.edge_count()) + " edges * " +
                std::to_string(net.message_count()) + " messages over " + ctx.name() +
                " is about 2^" + std::to_string(bits) + " assignments, over the cap of " +
                std::to_string(opts.cap));
        }
    }

    const auto topo = topological_order(net);
    std::vector<int> pos(net.node_count());
    for (size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = static_cast<int>(i);
    detail::SearchProblem p{net, ctx, {}, net.in_edges_by_node(), {}};
    p.edge_order.resize(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) p.edge_order[e] = e;
    std::sort(p.edge_order.begin(), p.edge_order.end(), [&](int a, int b) {
        return std::pair(pos[net.edges[a].tail], a) < std::pair(pos[net.edges[b].tail], b);
    });

    detail::SearchState init;
    init.edge_vec.assign(net.edge_count(), Vec(net.message_count(), ctx.zero()));
    init.pending_in.resize(net.node_count());
    for (int x = 0; x < net.node_count(); ++x) {
        init.pending_in[x] = static_cast<int>(p.in_edges[x].size());
        // Nodes with no in-edges must already satisfy their demands.
        if (init.pending_in[x] == 0 && !detail::node_demands_ok(p, init, x)) return std::nullopt;
    }

    const auto build_code = [&](const detail::SearchState& s) {
        GlobalCode code;
        code.ctx = ctx;
        code.edge_vectors = s.edge_vec;
        for (int x = 0; x < net.node_count(); ++x) {
            for (int m : net.generates[x])
                code.node_message_vectors[{x, m}] = standard_basis(ctx, net.message_count(), m);
            for (int m : net.demands[x])
                code.node_message_vectors[{x, m}] = standard_basis(ctx, net.message_count(), m);
        }
        return code;
    };

    if (net.edge_count() == 0) return build_code(init);

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        detail::SearchState s = init;
        if (detail::search_dfs(p, s, 0)) return build_code(s);
        return std::nullopt;
    }

    // Parallel mode: partition on the first edge's candidates. Workers claim
    // branches in ascending order and abandon branches above the best
    // solution found, so the result matches the sequential one.
    const int e0 = p.edge_order[0];
    const int head0 = net.edges[e0].head;
    const auto candidates = detail::span_elements(
        detail::assigned_in_vectors(p, init, net.edges[e0].tail), net.message_count(), ctx);
    std::vector<std::optional<detail::SearchState>> results(candidates.size());
    std::atomic<size_t> next{0};
    std::atomic<size_t> best{candidates.size()};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&]() {
            for (;;) {
                const size_t k = next.fetch_add(1);
                if (k >= candidates.size() || k > best.load()) return;
                detail::SearchState s = init;
                s.edge_vec[e0] = candidates[k].second;
                --s.pending_in[head0];
                const bool head_ok = s.pending_in[head0] > 0 || detail::node_demands_ok(p, s, head0);
                if (head_ok && detail::search_dfs(p, s, 1)) {
                    results[k] = std::move(s);
                    size_t cur = best.load();
                    while (k < cur && !best.compare_exchange_weak(cur, k)) {
                    }
                }
            }
        });
    for (auto& t : workers) t.join();
    for (const auto& r : results)
        if (r) return build_code(*r);
    return std::nullopt;
}

}  // namespace mnc
