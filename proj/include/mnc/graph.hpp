#pragma once

// Undirected multigraphs (parallel edges and self-loops allowed), plus the
// deterministic BFS spanning forest and fundamental-cycle helpers.

#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mnc {

struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }

    void check() const {
        for (const auto& [u, v] : edges)
            if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
                throw std::invalid_argument("edge endpoint out of range");
    }
};

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    // false when x and y were already connected
    bool unite(int x, int y) {
        const int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        parent_[rx] = ry;
        return true;
    }

private:
    std::vector<int> parent_;
};

// An edge subset is acyclic iff it is a forest: no self-loops and no edge
// closing an existing component.
inline bool edges_acyclic(const Graph& g, const std::vector<int>& edge_ids) {
    UnionFind uf(g.vertex_count);
    for (int e : edge_ids) {
        if (e < 0 || e >= g.edge_count()) throw std::out_of_range("edge id out of range");
        const auto& [u, v] = g.edges[e];
        if (u == v || !uf.unite(u, v)) return false;
    }
    return true;
}

struct SpanningForest {
    std::vector<int> tree_edges;     // edge ids in BFS discovery order
    std::vector<char> is_tree_edge;  // indexed by edge id
    std::vector<int> parent_vertex;  // -1 at component roots
    std::vector<int> parent_edge;    // edge id into parent, -1 at roots
    std::vector<int> depth;
    std::vector<int> component;      // component index per vertex
};

// Breadth-first forest: components are rooted at their smallest vertex in
// ascending order, and each vertex scans its incident edges in input order.
inline SpanningForest bfs_spanning_forest(const Graph& g) {
    g.check();
    SpanningForest f;
    f.is_tree_edge.assign(g.edge_count(), 0);
    f.parent_vertex.assign(g.vertex_count, -1);
    f.parent_edge.assign(g.vertex_count, -1);
    f.depth.assign(g.vertex_count, 0);
    f.component.assign(g.vertex_count, -1);

    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);  // (edge id, other end)
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& [u, v] = g.edges[e];
        adj[u].push_back({e, v});
        if (u != v) adj[v].push_back({e, u});
    }

    int comp = 0;
    for (int s = 0; s < g.vertex_count; ++s) {
        if (f.component[s] >= 0) continue;
        f.component[s] = comp;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& [e, w] : adj[u]) {
                if (f.component[w] >= 0) continue;
                f.component[w] = comp;
                f.parent_vertex[w] = u;
                f.parent_edge[w] = e;
                f.depth[w] = f.depth[u] + 1;
                f.is_tree_edge[e] = 1;
                f.tree_edges.push_back(e);
                q.push(w);
            }
        }
        ++comp;
    }
    return f;
}

// Tree edges on the forest path between the endpoints of the given edge.
// For a non-tree edge this is its fundamental cycle minus the edge itself;
// self-loops yield an empty path.
inline std::vector<int> fundamental_cycle(const Graph& g, const SpanningForest& f, int edge_id) {
    if (edge_id < 0 || edge_id >= g.edge_count()) throw std::out_of_range("edge id out of range");
    auto [u, v] = g.edges[edge_id];
    if (f.component[u] != f.component[v])
        throw std::logic_error("endpoints in different components");
    std::vector<int> path;
    while (u != v) {
        if (f.depth[u] < f.depth[v]) std::swap(u, v);
        path.push_back(f.parent_edge[u]);
        u = f.parent_vertex[u];
    }
    return path;
}

}  // namespace mnc
