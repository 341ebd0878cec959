#pragma once

// JSON interchange for every domain type, plus DOT export. All writers emit
// canonical documents (sorted keys, two-space indent, trailing newline) so
// identical values serialize byte-identically.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "matroidal.hpp"
#include "solver.hpp"

namespace mnc {

using nlohmann::json;

inline std::string json_text(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << json_text(j);
    if (!out) throw std::runtime_error("failed writing " + path);
}

namespace detail {

inline const json& field_of(const json& j, const char* key, const char* what) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string(what) + " is missing \"" + key + "\"");
    return j.at(key);
}

inline Vec vec_from_json(const FieldCtx& f, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector must be an array of integers");
    Vec v;
    for (const json& e : j) v.push_back(f.element(e.get<uint64_t>()));
    return v;
}

inline json vec_to_json(const Vec& v) {
    json j = json::array();
    for (const FieldElem e : v) j.push_back(e.value);
    return j;
}

}  // namespace detail

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).value);
        rows.push_back(std::move(row));
    }
    return {{"field", m.ctx().name()},
            {"rows", m.rows()},
            {"cols", m.cols()},
            {"matrix", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    const FieldCtx f = field_from_name(detail::field_of(j, "field", "matrix").get<std::string>());
    const size_t rows = detail::field_of(j, "rows", "matrix").get<size_t>();
    const size_t cols = detail::field_of(j, "cols", "matrix").get<size_t>();
    const json& data = detail::field_of(j, "matrix", "matrix");
    if (data.size() != rows) throw std::invalid_argument("matrix row count mismatch");
    Matrix m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (data[i].size() != cols) throw std::invalid_argument("matrix column count mismatch");
        for (size_t c = 0; c < cols; ++c) m.at(i, c) = f.element(data[i][c].get<uint64_t>());
    }
    return m;
}

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
    return {{"vertices", g.vertex_count}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
    Graph g;
    g.vertex_count = detail::field_of(j, "vertices", "graph").get<int>();
    for (const json& e : detail::field_of(j, "edges", "graph")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph edge must be a pair of vertex ids");
        g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    g.check();
    return g;
}

inline json matroid_to_json(const Matroid& m) {
    switch (m.kind()) {
        case Matroid::Kind::Uniform:
            return {{"kind", "uniform"}, {"c", m.uniform_rank()}, {"d", m.ground_size()}};
        case Matroid::Kind::Graphic: {
            json j = graph_to_json(m.graph());
            j["kind"] = "graphic";
            return j;
        }
        case Matroid::Kind::Vector: {
            json j = matrix_to_json(m.matrix());
            j["kind"] = "vector";
            return j;
        }
        case Matroid::Kind::Explicit: {
            std::vector<std::vector<int>> lists = m.explicit_sets();
            std::sort(lists.begin(), lists.end());
            json sets = json::array();
            for (const auto& s : lists) sets.push_back(s);
            return {{"kind", "explicit"},
                    {"ground_size", m.ground_size()},
                    {"independent", std::move(sets)}};
        }
    }
    throw std::logic_error("unknown matroid kind");
}

inline Matroid matroid_from_json(const json& j) {
    const std::string kind = detail::field_of(j, "kind", "matroid").get<std::string>();
    if (kind == "uniform")
        return uniform_matroid(detail::field_of(j, "c", "uniform matroid").get<int>(),
                               detail::field_of(j, "d", "uniform matroid").get<int>());
    if (kind == "graphic") return graphic_matroid(graph_from_json(j));
    if (kind == "vector") return vector_matroid(matrix_from_json(j));
    if (kind == "explicit") {
        const int ground = detail::field_of(j, "ground_size", "explicit matroid").get<int>();
        std::vector<std::vector<int>> sets;
        for (const json& s : detail::field_of(j, "independent", "explicit matroid"))
            sets.push_back(s.get<std::vector<int>>());
        return explicit_matroid(ground, sets);
    }
    throw std::invalid_argument("unknown matroid kind \"" + kind + "\"");
}

// The network document; when a mapping is attached it rides along under
// "mapping" with f split into per-message and per-edge element ids and g as
// a node id per ground element (-1 where undefined).
inline json network_to_json(const Network& net, const NetworkMatroidMapping* map = nullptr) {
    json nodes = json::array();
    for (int x = 0; x < net.node_count(); ++x) {
        json generates = json::array();
        for (int m : net.generates[x]) generates.push_back(net.messages[m]);
        json demands = json::array();
        for (int m : net.demands[x]) demands.push_back(net.messages[m]);
        nodes.push_back({{"id", x},
                         {"name", net.node_names[x]},
                         {"generates", std::move(generates)},
                         {"demands", std::move(demands)}});
    }
    json edges = json::array();
    for (int e = 0; e < net.edge_count(); ++e)
        edges.push_back({{"id", e}, {"tail", net.edges[e].tail}, {"head", net.edges[e].head}});
    json j = {{"alphabet", net.alphabet_size},
              {"messages", net.messages},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
    if (map)
        j["mapping"] = {{"messages", map->message_map}, {"edges", map->edge_map}, {"g", map->g}};
    return j;
}

inline Network network_from_json(const json& j) {
    Network net;
    net.alphabet_size = detail::field_of(j, "alphabet", "network").get<int>();
    for (const json& m : detail::field_of(j, "messages", "network"))
        net.add_message(m.get<std::string>());
    std::map<std::string, int> msg_index;
    for (int m = 0; m < net.message_count(); ++m) msg_index[net.messages[m]] = m;
    const auto lookup = [&](const json& name) {
        const auto it = msg_index.find(name.get<std::string>());
        if (it == msg_index.end())
            throw std::invalid_argument("unknown message \"" + name.get<std::string>() + "\"");
        return it->second;
    };
    const json& nodes = detail::field_of(j, "nodes", "network");
    for (const json& n : nodes) {
        if (detail::field_of(n, "id", "node").get<int>() != net.node_count())
            throw std::invalid_argument("node ids must be 0,1,... in order");
        net.add_node(detail::field_of(n, "name", "node").get<std::string>());
    }
    for (const json& n : nodes) {
        const int x = n.at("id").get<int>();
        for (const json& m : detail::field_of(n, "generates", "node")) net.generate(x, lookup(m));
        for (const json& m : detail::field_of(n, "demands", "node")) net.demand(x, lookup(m));
    }
    for (const json& e : detail::field_of(j, "edges", "network")) {
        if (detail::field_of(e, "id", "edge").get<int>() != net.edge_count())
            throw std::invalid_argument("edge ids must be 0,1,... in order");
        net.add_edge(detail::field_of(e, "tail", "edge").get<int>(),
                     detail::field_of(e, "head", "edge").get<int>());
    }
    check_network(net);
    return net;
}

inline std::optional<NetworkMatroidMapping> mapping_from_json(const json& j) {
    if (!j.contains("mapping")) return std::nullopt;
    const json& m = j.at("mapping");
    NetworkMatroidMapping map;
    map.message_map = detail::field_of(m, "messages", "mapping").get<std::vector<int>>();
    map.edge_map = detail::field_of(m, "edges", "mapping").get<std::vector<int>>();
    if (m.contains("g")) map.g = m.at("g").get<std::vector<int>>();
    return map;
}

// Codes are keyed by edge id (decimal string) and "node:message" for the
// message outputs at sources and receivers.
inline json code_to_json(const Network& net, const GlobalCode& code) {
    json vectors = json::object();
    for (int e = 0; e < net.edge_count() && e < static_cast<int>(code.edge_vectors.size()); ++e)
        vectors[std::to_string(e)] = detail::vec_to_json(code.edge_vectors[e]);
    for (const auto& [key, vec] : code.node_message_vectors) {
        const auto& [node, msg] = key;
        vectors[net.node_names[node] + ":" + net.messages[msg]] = detail::vec_to_json(vec);
    }
    return {{"field", code.ctx.name()}, {"vectors", std::move(vectors)}};
}

inline GlobalCode code_from_json(const Network& net, const json& j) {
    GlobalCode code;
    code.ctx = field_from_name(detail::field_of(j, "field", "code").get<std::string>());
    code.edge_vectors.assign(net.edge_count(), Vec{});
    std::map<std::string, int> node_index;
    for (int x = 0; x < net.node_count(); ++x) node_index[net.node_names[x]] = x;
    std::map<std::string, int> msg_index;
    for (int m = 0; m < net.message_count(); ++m) msg_index[net.messages[m]] = m;
    for (const auto& [key, value] : detail::field_of(j, "vectors", "code").items()) {
        const Vec vec = detail::vec_from_json(code.ctx, value);
        const auto colon = key.rfind(':');
        if (colon == std::string::npos) {
            size_t used = 0;
            int e = -1;
            try {
                e = std::stoi(key, &used);
            } catch (const std::exception&) {
            }
            if (used != key.size() || e < 0 || e >= net.edge_count())
                throw std::invalid_argument("\"" + key + "\" is not an edge id");
            code.edge_vectors[e] = vec;
            continue;
        }
        const auto node = node_index.find(key.substr(0, colon));
        const auto msg = msg_index.find(key.substr(colon + 1));
        if (node == node_index.end() || msg == msg_index.end())
            throw std::invalid_argument("\"" + key + "\" names no node:message pair");
        code.node_message_vectors[{node->second, msg->second}] = vec;
    }
    return code;
}

// Sources render as boxes, receivers as doubled ellipses listing their
// demands; with a code attached every edge is labeled with its vector.
inline std::string to_dot(const Network& net, const GlobalCode* code = nullptr) {
    std::ostringstream out;
    out << "digraph network {\n  rankdir=LR;\n";
    for (int x = 0; x < net.node_count(); ++x) {
        out << "  n" << x << " [label=\"" << net.node_names[x];
        for (int m : net.generates[x]) out << "\\n+" << net.messages[m];
        for (int m : net.demands[x]) out << "\\n?" << net.messages[m];
        out << "\"";
        if (!net.generates[x].empty()) out << " shape=box";
        else if (!net.demands[x].empty()) out << " shape=doubleoctagon";
        out << "];\n";
    }
    for (int e = 0; e < net.edge_count(); ++e) {
        out << "  n" << net.edges[e].tail << " -> n" << net.edges[e].head;
        if (code && e < static_cast<int>(code->edge_vectors.size())) {
            out << " [label=\"(";
            const Vec& v = code->edge_vectors[e];
            for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].value;
            out << ")\"]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace mnc
