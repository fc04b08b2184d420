#include "ghostaut/graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ghostaut/errors.hpp"

namespace ghostaut {

namespace {

struct UnionFind {
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a < b) std::swap(a, b);
        p[a] = b;
        return true;
    }
    std::vector<int> p;
};

}  // namespace

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> ends) : v_(vertex_count), ends_(std::move(ends)) {
    if (v_ < 0) throw std::invalid_argument("negative vertex count");
    out_.assign(v_, {});
    for (std::size_t k = 0; k < ends_.size(); ++k) {
        auto [u, w] = ends_[k];
        if (u < 0 || u >= v_ || w < 0 || w >= v_)
            throw std::invalid_argument("edge " + std::to_string(k) + " has an endpoint out of range");
    }
    for (int oe = 0; oe < oriented_count(); ++oe) out_[tail(oe)].push_back(oe);
}

Components components(const Graph& g) {
    UnionFind uf(g.vertex_count());
    for (auto [u, w] : g.ends()) uf.unite(u, w);
    Components c;
    c.of_vertex.assign(g.vertex_count(), -1);
    std::vector<int> id(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        if (id[r] < 0) id[r] = c.count++;
        c.of_vertex[v] = id[r];
    }
    return c;
}

int betti_number(const Graph& g) {
    return g.edge_count() - g.vertex_count() + components(g).count;
}

std::vector<bool> separating_edges(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<bool> bridge(g.edge_count(), false);
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;
    struct Frame {
        int v;
        int in_edge;
        std::size_t next;
    };
    for (int s = 0; s < n; ++s) {
        if (disc[s] >= 0) continue;
        std::vector<Frame> stack{{s, -1, 0}};
        disc[s] = low[s] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& out = g.out_edges(f.v);
            if (f.next < out.size()) {
                int oe = out[f.next++];
                if (f.in_edge >= 0 && Graph::edge_of(oe) == Graph::edge_of(f.in_edge)) continue;
                int w = g.head(oe);
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, oe, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                int v = f.v, in = f.in_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) bridge[Graph::edge_of(in)] = true;
                }
            }
        }
    }
    return bridge;
}

bool is_tree_like(const Graph& g) {
    if (components(g).count != 1) throw Disconnected("graph is not connected");
    auto sep = separating_edges(g);
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.is_loop(e) && !sep[e]) return false;
    return true;
}

SpanningForest spanning_forest(const Graph& g) {
    const int n = g.vertex_count();
    SpanningForest f;
    f.in_forest.assign(g.edge_count(), false);
    UnionFind uf(n);
    for (int e = 0; e < g.edge_count(); ++e)
        if (uf.unite(g.ends()[e].first, g.ends()[e].second)) f.in_forest[e] = true;
    f.parent_edge.assign(n, -1);
    f.root.assign(n, -1);
    f.depth.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        if (f.root[s] >= 0) continue;
        f.root[s] = s;
        std::size_t head = f.order.size();
        f.order.push_back(s);
        while (head < f.order.size()) {
            int v = f.order[head++];
            for (int oe : g.out_edges(v)) {
                if (!f.in_forest[Graph::edge_of(oe)]) continue;
                int w = g.head(oe);
                if (f.root[w] >= 0) continue;
                f.root[w] = s;
                f.parent_edge[w] = oe;
                f.depth[w] = f.depth[v] + 1;
                f.order.push_back(w);
            }
        }
    }
    return f;
}

std::vector<int> fundamental_cycle(const Graph& g, const SpanningForest& f, int oriented_edge) {
    if (oriented_edge < 0 || oriented_edge >= g.oriented_count())
        throw std::invalid_argument("oriented edge out of range");
    if (f.in_forest[Graph::edge_of(oriented_edge)]) throw NotCotree("edge belongs to the spanning forest");
    std::vector<int> cycle{oriented_edge};
    int u = g.head(oriented_edge), w = g.tail(oriented_edge);
    std::vector<int> down;
    while (u != w) {
        if (f.depth[u] >= f.depth[w]) {
            int pe = f.parent_edge[u];
            cycle.push_back(Graph::mate(pe));
            u = g.tail(pe);
        } else {
            int pe = f.parent_edge[w];
            down.push_back(pe);
            w = g.tail(pe);
        }
    }
    cycle.insert(cycle.end(), down.rbegin(), down.rend());
    return cycle;
}

Contraction contract(const Graph& g, const std::vector<bool>& contracted) {
    if (static_cast<int>(contracted.size()) != g.edge_count())
        throw std::invalid_argument("contraction flags do not match edge count");
    UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (contracted[e]) uf.unite(g.ends()[e].first, g.ends()[e].second);
    Contraction c;
    c.vertex_map.assign(g.vertex_count(), -1);
    std::vector<int> id(g.vertex_count(), -1);
    int nv = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        if (id[r] < 0) id[r] = nv++;
        c.vertex_map[v] = id[r];
    }
    std::vector<std::pair<int, int>> ends;
    c.edge_map.assign(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (contracted[e]) continue;
        c.edge_map[e] = static_cast<int>(ends.size());
        c.edge_origin.push_back(e);
        ends.emplace_back(c.vertex_map[g.ends()[e].first], c.vertex_map[g.ends()[e].second]);
    }
    c.graph = Graph(nv, std::move(ends));
    return c;
}

std::vector<int> canonical_form(const Graph& g, const std::vector<int>& vertex_labels,
                                const std::vector<int>& edge_labels) {
    const int n = g.vertex_count();
    auto vlabel = [&](int v) { return vertex_labels.empty() ? 0 : vertex_labels[v]; };
    auto elabel = [&](int e) { return edge_labels.empty() ? 0 : edge_labels[e]; };
    // invariant used to refine the vertex order before trying permutations
    std::vector<std::vector<int>> inv(n);
    for (int v = 0; v < n; ++v) {
        int loops = 0;
        std::vector<int> labels;
        for (int oe : g.out_edges(v)) {
            if (g.head(oe) == v) ++loops;
            labels.push_back(elabel(Graph::edge_of(oe)));
        }
        std::sort(labels.begin(), labels.end());
        inv[v] = {vlabel(v), g.degree(v), loops};
        inv[v].insert(inv[v].end(), labels.begin(), labels.end());
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });
    std::vector<int> block_end(n);
    for (int i = n - 1; i >= 0; --i)
        block_end[i] = (i + 1 < n && inv[order[i]] == inv[order[i + 1]]) ? block_end[i + 1] : i + 1;

    std::vector<int> best;
    std::vector<int> pos(n);
    std::vector<std::array<int, 3>> edges(g.edge_count());
    auto encode = [&]() {
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        for (int e = 0; e < g.edge_count(); ++e) {
            int a = pos[g.ends()[e].first], b = pos[g.ends()[e].second];
            edges[e] = {std::min(a, b), std::max(a, b), elabel(e)};
        }
        std::sort(edges.begin(), edges.end());
        std::vector<int> code{n, g.edge_count()};
        for (int i = 0; i < n; ++i) code.insert(code.end(), inv[order[i]].begin(), inv[order[i]].end());
        for (const auto& t : edges) code.insert(code.end(), t.begin(), t.end());
        if (best.empty() || code < best) best = std::move(code);
    };
    // permute within blocks of equal invariant
    auto rec = [&](auto&& self, int start) -> void {
        if (start >= n) {
            encode();
            return;
        }
        int end = block_end[start];
        std::sort(order.begin() + start, order.begin() + end);
        do {
            self(self, end);
        } while (std::next_permutation(order.begin() + start, order.begin() + end));
    };
    rec(rec, 0);
    if (n == 0) best = {0, 0};
    return best;
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

GraphGroupAction::GraphGroupAction(std::shared_ptr<const FiniteGroup> group, Graph graph, std::vector<int> vertex_perm,
                                   std::vector<int> edge_perm)
    : group_(std::move(group)), graph_(std::move(graph)), vperm_(std::move(vertex_perm)), eperm_(std::move(edge_perm)) {
    if (static_cast<int>(vperm_.size()) != group_->order() * graph_.vertex_count() ||
        static_cast<int>(eperm_.size()) != group_->order() * graph_.oriented_count())
        throw std::invalid_argument("action tables have the wrong size");
}

void GraphGroupAction::validate() const {
    const FiniteGroup& g = *group_;
    const int nv = graph_.vertex_count(), ne = graph_.oriented_count();
    for (int v = 0; v < nv; ++v)
        if (act_vertex(g.identity(), v) != v) throw std::invalid_argument("identity moves a vertex");
    for (int oe = 0; oe < ne; ++oe)
        if (act_edge(g.identity(), oe) != oe) throw std::invalid_argument("identity moves an edge");
    for (Element x = 0; x < g.order(); ++x) {
        for (int oe = 0; oe < ne; ++oe) {
            int y = act_edge(x, oe);
            if (y < 0 || y >= ne) throw std::invalid_argument("edge image out of range");
            if (act_edge(x, Graph::mate(oe)) != Graph::mate(y)) throw std::invalid_argument("action does not commute with mate");
            if (graph_.tail(y) != act_vertex(x, graph_.tail(oe)) || graph_.head(y) != act_vertex(x, graph_.head(oe)))
                throw std::invalid_argument("action is not compatible with incidence");
        }
        for (Element z = 0; z < g.order(); ++z) {
            Element xz = g.mul(x, z);
            for (int v = 0; v < nv; ++v)
                if (act_vertex(xz, v) != act_vertex(x, act_vertex(z, v)))
                    throw std::invalid_argument("vertex action is not a homomorphism");
            for (int oe = 0; oe < ne; ++oe)
                if (act_edge(xz, oe) != act_edge(x, act_edge(z, oe)))
                    throw std::invalid_argument("edge action is not a homomorphism");
        }
    }
}

Quotient quotient_graph(const GraphGroupAction& action) {
    const Graph& gr = action.graph();
    const FiniteGroup& g = action.group();
    Quotient q;
    q.vertex_map.assign(gr.vertex_count(), -1);
    int nv = 0;
    for (int v = 0; v < gr.vertex_count(); ++v) {
        if (q.vertex_map[v] >= 0) continue;
        for (Element x = 0; x < g.order(); ++x) q.vertex_map[action.act_vertex(x, v)] = nv;
        ++nv;
    }
    q.edge_map.assign(gr.oriented_count(), -1);
    std::vector<std::pair<int, int>> ends;
    for (int oe = 0; oe < gr.oriented_count(); ++oe) {
        if (q.edge_map[oe] >= 0) continue;
        int k = static_cast<int>(ends.size());
        for (Element x = 0; x < g.order(); ++x) {
            int y = action.act_edge(x, oe);
            if (y == Graph::mate(oe)) throw std::invalid_argument("the action inverts an edge");
            q.edge_map[y] = 2 * k;
            q.edge_map[Graph::mate(y)] = 2 * k + 1;
        }
        ends.emplace_back(q.vertex_map[gr.tail(oe)], q.vertex_map[gr.head(oe)]);
    }
    q.graph = Graph(nv, std::move(ends));
    return q;
}

ActionContraction contract(const GraphGroupAction& action, const std::vector<bool>& contracted) {
    const Graph& gr = action.graph();
    const FiniteGroup& g = action.group();
    for (int e = 0; e < gr.edge_count(); ++e) {
        if (!contracted[e]) continue;
        for (Element x = 0; x < g.order(); ++x)
            if (!contracted[Graph::edge_of(action.act_edge(x, 2 * e))])
                throw UnstableSet("contracted set is not G-stable");
    }
    ActionContraction out;
    out.maps = contract(gr, contracted);
    const Graph& ng = out.maps.graph;
    std::vector<int> vperm(static_cast<std::size_t>(g.order()) * ng.vertex_count());
    std::vector<int> eperm(static_cast<std::size_t>(g.order()) * ng.oriented_count());
    for (Element x = 0; x < g.order(); ++x) {
        for (int v = 0; v < gr.vertex_count(); ++v)
            vperm[x * ng.vertex_count() + out.maps.vertex_map[v]] = out.maps.vertex_map[action.act_vertex(x, v)];
        for (int ne = 0; ne < ng.edge_count(); ++ne) {
            int old = out.maps.edge_origin[ne];
            for (int side = 0; side < 2; ++side) {
                int y = action.act_edge(x, 2 * old + side);
                int img = 2 * out.maps.edge_map[Graph::edge_of(y)] + (y & 1);
                eperm[x * ng.oriented_count() + 2 * ne + side] = img;
            }
        }
    }
    out.action = GraphGroupAction(action.group_ptr(), ng, std::move(vperm), std::move(eperm));
    return out;
}

}  // namespace ghostaut
