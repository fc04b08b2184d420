#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ghostaut/cover.hpp"
#include "ghostaut/ghost.hpp"
#include "ghostaut/graph.hpp"
#include "ghostaut/group.hpp"

namespace testing_support {

using namespace ghostaut;
using Rng = std::mt19937_64;

inline std::shared_ptr<const FiniteGroup> group(const std::string& name) {
    static std::map<std::string, std::shared_ptr<const FiniteGroup>> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, std::make_shared<const FiniteGroup>(FiniteGroup::builtin(name))).first;
    return it->second;
}

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// every subset closed under multiplication containing the identity
inline std::vector<ElementMask> brute_subgroups(const FiniteGroup& g) {
    std::vector<ElementMask> out;
    const int n = g.order();
    for (ElementMask m = 0; m < (ElementMask{1} << n); ++m) {
        if (!((m >> g.identity()) & 1U)) continue;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                if (((m >> a) & 1U) && ((m >> b) & 1U) && !((m >> g.mul(a, b)) & 1U)) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

inline bool is_equivariant0(const GraphGroupAction& act, const std::vector<Element>& a) {
    const FiniteGroup& G = act.group();
    for (Element x = 0; x < G.order(); ++x)
        for (int v = 0; v < act.graph().vertex_count(); ++v)
            if (a[act.act_vertex(x, v)] != G.conjugate(x, a[v])) return false;
    return true;
}

inline std::vector<Element> naive_delta(const GraphGroupAction& act, const std::vector<Element>& a) {
    const FiniteGroup& G = act.group();
    const Graph& gr = act.graph();
    std::vector<Element> b(gr.oriented_count());
    for (int oe = 0; oe < gr.oriented_count(); ++oe) b[oe] = G.mul(a[gr.head(oe)], G.inv(a[gr.tail(oe)]));
    return b;
}

// Full enumeration of G^V; only call when |G|^V is small.
inline std::optional<std::vector<Element>> brute_preimage(const GraphGroupAction& act, const std::vector<Element>& b) {
    const int n = act.group().order();
    const int nv = act.graph().vertex_count();
    std::vector<Element> a(nv, 0);
    while (true) {
        if (naive_delta(act, a) == b && is_equivariant0(act, a)) return a;
        int i = nv - 1;
        while (i >= 0 && ++a[i] == n) a[i--] = 0;
        if (i < 0) return std::nullopt;
    }
}

inline double cochain_space(const GraphGroupAction& act) {
    return std::pow(static_cast<double>(act.group().order()), act.graph().vertex_count());
}

// Random value at an orbit representative, propagated; retried until consistent.
inline std::vector<Element> random_equivariant_cochain1(Rng& rng, const GraphGroupAction& act) {
    const FiniteGroup& G = act.group();
    const int no = act.graph().oriented_count();
    std::vector<Element> b(no, -1);
    for (int oe = 0; oe < no; ++oe) {
        if (b[oe] >= 0) continue;
        std::vector<Element> cand(G.order());
        std::iota(cand.begin(), cand.end(), 0);
        std::shuffle(cand.begin(), cand.end(), rng);
        for (Element x : cand) {
            std::vector<Element> trial = b;
            bool ok = true;
            for (Element g = 0; g < G.order() && ok; ++g) {
                int e1 = act.act_edge(g, oe);
                Element y = G.conjugate(g, x);
                for (auto [e, val] : {std::pair{e1, y}, std::pair{Graph::mate(e1), G.inv(y)}}) {
                    if (trial[e] >= 0 && trial[e] != val) ok = false;
                    trial[e] = val;
                }
            }
            if (ok) {
                b = std::move(trial);
                break;
            }
        }
    }
    return b;
}

inline std::vector<Element> random_equivariant_cochain0(Rng& rng, const GraphGroupAction& act) {
    const FiniteGroup& G = act.group();
    const int nv = act.graph().vertex_count();
    std::vector<Element> a(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (a[v] >= 0) continue;
        std::vector<Element> cand(G.order());
        std::iota(cand.begin(), cand.end(), 0);
        std::shuffle(cand.begin(), cand.end(), rng);
        for (Element x : cand) {
            std::vector<Element> trial = a;
            bool ok = true;
            for (Element g = 0; g < G.order() && ok; ++g) {
                int w = act.act_vertex(g, v);
                Element y = G.conjugate(g, x);
                if (trial[w] >= 0 && trial[w] != y) ok = false;
                trial[w] = y;
            }
            if (ok) {
                a = std::move(trial);
                break;
            }
        }
    }
    return a;
}

inline Graph random_connected_graph(Rng& rng, int nv, int ne) {
    std::vector<std::pair<int, int>> ends;
    for (int v = 1; v < nv && static_cast<int>(ends.size()) < ne; ++v) ends.emplace_back(uniform(rng, 0, v - 1), v);
    while (static_cast<int>(ends.size()) < ne) ends.emplace_back(uniform(rng, 0, nv - 1), uniform(rng, 0, nv - 1));
    std::shuffle(ends.begin(), ends.end(), rng);
    for (auto& e : ends)
        if (uniform(rng, 0, 1)) std::swap(e.first, e.second);
    return Graph(nv, ends);
}

inline Graph random_graph(Rng& rng, int nv, int ne) {
    std::vector<std::pair<int, int>> ends;
    for (int i = 0; i < ne; ++i) ends.emplace_back(uniform(rng, 0, nv - 1), uniform(rng, 0, nv - 1));
    return Graph(nv, ends);
}

inline std::vector<int> element_orders_above_one(const FiniteGroup& g) {
    std::vector<int> out;
    for (Element x = 0; x < g.order(); ++x)
        if (g.element_order(x) > 1 && std::find(out.begin(), out.end(), g.element_order(x)) == out.end())
            out.push_back(g.element_order(x));
    std::sort(out.begin(), out.end());
    return out;
}

// Stable base with total genus >= 2, r drawn from the element orders of g.
inline DecoratedGraph random_base(Rng& rng, const FiniteGroup& g, int max_v, int max_e, int max_genus,
                                  int max_markings = 0) {
    auto orders = element_orders_above_one(g);
    while (true) {
        int nv = uniform(rng, 1, max_v);
        int ne = uniform(rng, std::max(0, nv - 1), max_e);
        if (ne < nv - 1) continue;
        DecoratedGraph d;
        d.graph = random_connected_graph(rng, nv, ne);
        d.genus.resize(nv);
        d.markings.resize(nv);
        for (int v = 0; v < nv; ++v) {
            d.genus[v] = uniform(rng, 0, max_genus);
            d.markings[v] = uniform(rng, 0, max_markings);
        }
        for (int e = 0; e < ne; ++e) d.r.push_back(orders[uniform(rng, 0, static_cast<int>(orders.size()) - 1)]);
        bool ok = d.total_genus() >= 2;
        for (int v = 0; v < nv && ok; ++v) ok = d.stable_at(v);
        if (ok) return d;
    }
}

// Random datum with arbitrary voltages (no gauge fixing); nullopt if the
// random index choice admits no vertex tuple.
inline std::optional<CoverDatum> random_datum(Rng& rng, const MonodromyTable& table, const DecoratedGraph& base) {
    const FiniteGroup& G = table.group();
    const Graph& gr = base.graph;
    CoverDatum d;
    d.group = table.group_ptr();
    d.base = base;
    d.voltages.assign(gr.oriented_count(), 0);
    std::vector<Element> c(gr.edge_count());
    for (int e = 0; e < gr.edge_count(); ++e) {
        std::vector<Element> cand;
        for (Element x = 0; x < G.order(); ++x)
            if (G.element_order(x) == base.r[e]) cand.push_back(x);
        if (cand.empty()) return std::nullopt;
        c[e] = cand[uniform(rng, 0, static_cast<int>(cand.size()) - 1)];
        Element g = uniform(rng, 0, G.order() - 1);
        d.voltages[2 * e] = g;
        d.voltages[2 * e + 1] = G.inv(g);
    }
    d.monodromy.resize(gr.vertex_count());
    for (int v = 0; v < gr.vertex_count(); ++v) {
        std::vector<Element> tail;
        Element p = G.identity();
        for (int oe : gr.out_edges(v)) {
            int e = Graph::edge_of(oe);
            Element g = d.voltages[2 * e];
            Element x = (oe & 1) ? G.mul(G.mul(G.inv(g), G.inv(c[e])), g) : c[e];
            tail.push_back(x);
            p = G.mul(p, x);
        }
        for (int j = 0; j < base.markings[v]; ++j) {
            Element x = uniform(rng, 0, G.order() - 1);
            tail.push_back(x);
            p = G.mul(p, x);
        }
        const auto& ents = table.entries(base.genus[v], G.inv(p));
        if (ents.empty()) return std::nullopt;
        d.monodromy[v] = ents[uniform(rng, 0, static_cast<int>(ents.size()) - 1)].witness;
        d.monodromy[v].insert(d.monodromy[v].end(), tail.begin(), tail.end());
    }
    return d;
}

// Change of base point in each vertex fiber: monodromy at v conjugated by y_v,
// g(e) -> y_tail g(e) y_head^-1. Gives an isomorphic cover.
inline CoverDatum gauge(const CoverDatum& d, const std::vector<Element>& y) {
    const FiniteGroup& G = *d.group;
    const Graph& gr = d.base.graph;
    CoverDatum out = d;
    for (int v = 0; v < gr.vertex_count(); ++v)
        for (auto& x : out.monodromy[v]) x = G.conjugate(y[v], x);
    for (int oe = 0; oe < gr.oriented_count(); ++oe)
        out.voltages[oe] = G.mul(G.mul(y[gr.tail(oe)], d.voltages[oe]), G.inv(y[gr.head(oe)]));
    return out;
}

// Solvability of M x = b over Z/n via Smith normal form over Z.
inline bool solvable_mod_n(std::vector<std::vector<long long>> m, std::vector<long long> b, long long n) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    auto row_op = [&](int i, int j, long long q) {  // row i -= q row j
        for (int k = 0; k < cols; ++k) m[i][k] -= q * m[j][k];
        b[i] -= q * b[j];
    };
    auto col_op = [&](int i, int j, long long q) {  // col i -= q col j
        for (int k = 0; k < rows; ++k) m[k][i] -= q * m[k][j];
    };
    int t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // pivot: smallest nonzero |entry| in the remaining block
        while (true) {
            int pi = -1, pj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pi < 0 || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) pi = i, pj = j;
            if (pi < 0) goto done;
            std::swap(m[t], m[pi]);
            std::swap(b[t], b[pi]);
            for (int k = 0; k < rows; ++k) std::swap(m[k][t], m[k][pj]);
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                row_op(i, t, m[i][t] / m[t][t]);
                if (m[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                col_op(j, t, m[t][j] / m[t][t]);
                if (m[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
    }
done:
    for (int i = 0; i < rows; ++i) {
        long long d = i < cols ? m[i][i] : 0;
        long long rhs = ((b[i] % n) + n) % n;
        long long gcd = std::gcd(std::llabs(d), n);
        if (rhs % gcd != 0) return false;
    }
    return true;
}

}  // namespace testing_support
