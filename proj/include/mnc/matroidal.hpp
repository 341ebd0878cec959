#pragma once

// Matroidal networks: the network-matroid mapping, its verification, and the
// four-step construction that turns a matroid into a network whose structure
// mirrors the matroid's circuits and bases.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matroid.hpp"
#include "network.hpp"

namespace mnc {

// f maps messages and edges to ground elements; g partially maps ground
// elements back to nodes (-1 where undefined). g is auxiliary: verification
// of the mapping itself only needs f.
struct NetworkMatroidMapping {
    std::vector<int> message_map;  // f on messages, by message index
    std::vector<int> edge_map;     // f on edges, by edge id
    std::vector<int> g;            // ground element -> node id, -1 undefined
    bool operator==(const NetworkMatroidMapping&) const = default;
};

struct MatroidalReport {
    bool ok = true;
    std::vector<std::string> violations;
};

namespace detail {

inline std::vector<int> mapped_set(const NetworkMatroidMapping& map,
                                   const std::vector<int>& msgs, const std::vector<int>& edges) {
    std::vector<int> out;
    for (int m : msgs) out.push_back(map.message_map[m]);
    for (int e : edges) out.push_back(map.edge_map[e]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// Checks the three conditions of a network-matroid mapping:
//  1. f is injective on the messages,
//  2. f(messages) is independent,
//  3. per node x, r(f(In(x))) = r(f(In(x) atop Out(x))),
// where In(x) is generated messages plus in-edges and Out(x) is demanded
// messages plus out-edges. Throws if f is not total on messages and edges.
inline MatroidalReport verify_matroidal(const Network& net, const Matroid& m,
                                        const NetworkMatroidMapping& map) {
    if (map.message_map.size() != static_cast<size_t>(net.message_count()) ||
        map.edge_map.size() != static_cast<size_t>(net.edge_count()))
        throw std::invalid_argument("mapping must cover every message and edge");
    for (int x : map.message_map)
        if (x < 0 || x >= m.ground_size()) throw std::invalid_argument("mapped element out of range");
    for (int x : map.edge_map)
        if (x < 0 || x >= m.ground_size()) throw std::invalid_argument("mapped element out of range");

    MatroidalReport report;
    const auto fail = [&](std::string why) {
        report.ok = false;
        report.violations.push_back(std::move(why));
    };

    std::vector<int> msg_elems = map.message_map;
    std::sort(msg_elems.begin(), msg_elems.end());
    if (std::adjacent_find(msg_elems.begin(), msg_elems.end()) != msg_elems.end())
        fail("condition 1: two messages map to the same element");
    msg_elems.erase(std::unique(msg_elems.begin(), msg_elems.end()), msg_elems.end());
    if (!m.independent(msg_elems))
        fail("condition 2: the message image {" + join_ints(msg_elems) + "} is dependent");

    const auto in_edges = net.in_edges_by_node();
    const auto out_edges = net.out_edges_by_node();
    for (int x = 0; x < net.node_count(); ++x) {
        const std::vector<int> in_set = detail::mapped_set(map, net.generates[x], in_edges[x]);
        std::vector<int> both_msgs = net.generates[x];
        both_msgs.insert(both_msgs.end(), net.demands[x].begin(), net.demands[x].end());
        std::vector<int> both_edges = in_edges[x];
        both_edges.insert(both_edges.end(), out_edges[x].begin(), out_edges[x].end());
        const std::vector<int> full_set = detail::mapped_set(map, both_msgs, both_edges);
        const int rin = m.rank_of(in_set);
        const int rfull = m.rank_of(full_set);
        if (rin != rfull)
            fail("condition 3 at node " + net.node_names[x] + ": rank of f(In) is " +
                 std::to_string(rin) + " but rank of f(In u Out) is " + std::to_string(rfull));
    }
    return report;
}

// Consistency of the auxiliary g map with the construction invariant: a
// defined g(x) is either a source generating the message mapped to x, or a
// node of in-degree 1 whose in-edge maps to x.
inline MatroidalReport check_g(const Network& net, const NetworkMatroidMapping& map) {
    MatroidalReport report;
    const auto in_edges = net.in_edges_by_node();
    for (size_t x = 0; x < map.g.size(); ++x) {
        const int node = map.g[x];
        if (node < 0) continue;
        if (node >= net.node_count()) {
            report.ok = false;
            report.violations.push_back("g(" + std::to_string(x) + ") is not a node");
            continue;
        }
        bool source_ok = false;
        for (int msg : net.generates[node])
            source_ok |= map.message_map[msg] == static_cast<int>(x);
        const bool relay_ok =
            in_edges[node].size() == 1 && map.edge_map[in_edges[node][0]] == static_cast<int>(x);
        if (!source_ok && !relay_ok) {
            report.ok = false;
            report.violations.push_back("g(" + std::to_string(x) + ") = " + net.node_names[node] +
                                        " neither generates the element's message nor relays it");
        }
    }
    return report;
}

struct ConstructionConfig {
    std::optional<std::vector<int>> base;  // Step-1 base; default lexicographically smallest
    bool step3 = true;                     // receivers per (circuit, source-mapped element)
    bool step4 = true;                     // receivers per fully reached base
    int step3_cap = 64;                    // most Step-3 receivers to add
    int step4_cap = 64;                    // most Step-4 receivers to add
    int alphabet = 2;
    uint64_t enum_cap = 16;                // circuit/base enumeration bound (elements)
};

struct Construction {
    Network net;
    NetworkMatroidMapping mapping;
    std::vector<int> base;  // the Step-1 base, in message order
};

// Builds a network from a matroid in four steps:
//  1. one source per base element, generating one message;
//  2. while some circuit has exactly one unreached element, add a coding
//     node fed by the reached elements' nodes and a relay node that carries
//     the unreached element (circuits scanned in lexicographic order);
//  3. for each (circuit, source-mapped element) pair whose other elements
//     are reached, a receiver demanding that message;
//  4. for each fully reached base, a receiver demanding every message.
// Self-loops of graphic matroids (and 1-circuits generally) are skipped.
inline Construction construct(const Matroid& m, const ConstructionConfig& cfg = {}) {
    std::vector<int> base;
    if (cfg.base) {
        base = *cfg.base;
        std::vector<int> sorted = base;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            static_cast<int>(base.size()) != m.rank_full() || !m.independent(base))
            throw std::invalid_argument("configured base is not a base of the matroid");
    } else {
        base = lex_smallest_base(m);
    }

    Construction out;
    Network& net = out.net;
    NetworkMatroidMapping& map = out.mapping;
    net.alphabet_size = cfg.alphabet;
    map.g.assign(m.ground_size(), -1);

    for (size_t i = 0; i < base.size(); ++i) {
        net.add_message("m" + std::to_string(i + 1));
        const int node = net.add_node("n" + std::to_string(i + 1));
        net.generate(node, static_cast<int>(i));
        map.message_map.push_back(base[i]);
        map.g[base[i]] = node;
    }
    const auto add_mapped_edge = [&](int tail, int head, int elem) {
        net.add_edge(tail, head);
        map.edge_map.push_back(elem);
    };

    const std::vector<std::vector<int>> circs = circuits(m, cfg.enum_cap);
    int coding_rounds = 0;
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto& c : circs) {
            if (c.size() < 2) continue;
            int undefined = -1;
            bool single = true;
            for (int x : c) {
                if (map.g[x] >= 0) continue;
                if (undefined >= 0) {
                    single = false;
                    break;
                }
                undefined = x;
            }
            if (!single || undefined < 0) continue;
            ++coding_rounds;
            const int y = net.add_node("y" + std::to_string(coding_rounds));
            for (int x : c)
                if (x != undefined) add_mapped_edge(map.g[x], y, x);
            const int relay = net.add_node("z" + std::to_string(coding_rounds));
            add_mapped_edge(y, relay, undefined);
            map.g[undefined] = relay;
            progress = true;
            break;  // rescan from the lexicographically first circuit
        }
    }

    std::vector<int> msg_of(m.ground_size(), -1);
    for (size_t i = 0; i < base.size(); ++i) msg_of[base[i]] = static_cast<int>(i);
    int receivers = 0;

    if (cfg.step3) {
        int added = 0;
        for (const auto& c : circs) {
            if (added >= cfg.step3_cap) break;
            if (c.size() < 2) continue;
            for (int x0 : c) {
                if (added >= cfg.step3_cap) break;
                if (msg_of[x0] < 0) continue;
                bool reached = true;
                for (int x : c)
                    if (x != x0 && map.g[x] < 0) {
                        reached = false;
                        break;
                    }
                if (!reached) continue;
                ++added;
                const int r = net.add_node("r" + std::to_string(++receivers));
                net.demand(r, msg_of[x0]);
                for (int x : c)
                    if (x != x0) add_mapped_edge(map.g[x], r, x);
            }
        }
    }

    if (cfg.step4) {
        int added = 0;
        for (const auto& b : bases(m, cfg.enum_cap)) {
            if (added >= cfg.step4_cap) break;
            bool reached = true;
            for (int x : b)
                if (map.g[x] < 0) {
                    reached = false;
                    break;
                }
            if (!reached) continue;
            ++added;
            const int r = net.add_node("r" + std::to_string(++receivers));
            for (int msg = 0; msg < net.message_count(); ++msg) net.demand(r, msg);
            for (int x : b) add_mapped_edge(map.g[x], r, x);
        }
    }

    check_network(net);
    out.base = std::move(base);
    return out;
}

// One demand with the in-edge ids available to decode it.
struct Connection {
    int node = -1;
    int message = -1;
    std::vector<int> in_edges;
    bool operator==(const Connection&) const = default;
};

inline std::vector<Connection> extract_connections(const Network& net) {
    const auto in_edges = net.in_edges_by_node();
    std::vector<Connection> out;
    for (int x = 0; x < net.node_count(); ++x)
        for (int m : net.demands[x]) out.push_back({x, m, in_edges[x]});
    return out;
}

}  // namespace mnc
