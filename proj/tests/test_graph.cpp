#include <gtest/gtest.h>

#include <set>

#include "ghostaut/errors.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

Graph banana() { return Graph(2, {{0, 1}, {0, 1}}); }

int naive_components(int nv, const std::vector<std::pair<int, int>>& ends) {
    std::vector<int> p(nv);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
        while (p[x] != x) x = p[x];
        return x;
    };
    int c = nv;
    for (auto [u, v] : ends) {
        int a = find(u), b = find(v);
        if (a != b) {
            p[a] = b;
            --c;
        }
    }
    return c;
}

using Code = std::multiset<std::tuple<int, int, int>>;

Code relabelled_code(const Graph& g, const std::vector<int>& perm, const std::vector<int>& el) {
    Code c;
    for (int e = 0; e < g.edge_count(); ++e) {
        int a = perm[g.ends()[e].first], b = perm[g.ends()[e].second];
        c.insert({std::min(a, b), std::max(a, b), el.empty() ? 0 : el[e]});
    }
    return c;
}

bool brute_isomorphic(const Graph& a, const std::vector<int>& va, const std::vector<int>& ea, const Graph& b,
                      const std::vector<int>& vb, const std::vector<int>& eb) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    const int n = a.vertex_count();
    std::vector<int> id(n), perm(n);
    std::iota(id.begin(), id.end(), 0);
    std::iota(perm.begin(), perm.end(), 0);
    Code target = relabelled_code(b, id, eb);
    do {
        bool labels = true;
        for (int v = 0; v < n && labels; ++v) labels = (va.empty() ? 0 : va[v]) == (vb.empty() ? 0 : vb[perm[v]]);
        if (labels && relabelled_code(a, perm, ea) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST(Graph, OrientedEdges) {
    Graph g(3, {{0, 1}, {1, 2}, {2, 2}});
    EXPECT_EQ(g.oriented_count(), 6);
    EXPECT_EQ(g.tail(2), 1);
    EXPECT_EQ(g.head(2), 2);
    EXPECT_EQ(g.tail(3), 2);
    EXPECT_EQ(g.head(3), 1);
    EXPECT_EQ(Graph::mate(4), 5);
    EXPECT_EQ(Graph::edge_of(5), 2);
    EXPECT_TRUE(g.is_loop(2));
    EXPECT_EQ(g.degree(2), 3);
    EXPECT_EQ(g.out_edges(2), (std::vector<int>{3, 4, 5}));
    EXPECT_THROW(Graph(2, {{0, 2}}), std::invalid_argument);
}

TEST(Graph, BettiNumbers) {
    EXPECT_EQ(betti_number(banana()), 1);
    EXPECT_EQ(betti_number(Graph(1, {{0, 0}, {0, 0}})), 2);
    EXPECT_EQ(betti_number(Graph(3, {{0, 1}, {1, 2}})), 0);
    Rng rng(1);
    for (int it = 0; it < 1000; ++it) {
        Graph g = random_graph(rng, uniform(rng, 1, 6), uniform(rng, 0, 8));
        EXPECT_EQ(betti_number(g), g.edge_count() - g.vertex_count() + naive_components(g.vertex_count(), g.ends()));
        EXPECT_EQ(components(g).count, naive_components(g.vertex_count(), g.ends()));
    }
}

TEST(Graph, BridgesExamples) {
    EXPECT_EQ(separating_edges(banana()), (std::vector<bool>{false, false}));
    Graph two_triangles(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
    std::vector<bool> expect(7, false);
    expect[6] = true;
    EXPECT_EQ(separating_edges(two_triangles), expect);
    EXPECT_EQ(separating_edges(Graph(1, {{0, 0}})), std::vector<bool>{false});
}

TEST(Graph, BridgesMatchRemovalOracle) {
    Rng rng(2);
    for (int it = 0; it < 2000; ++it) {
        Graph g = random_graph(rng, uniform(rng, 1, 7), uniform(rng, 0, 9));
        auto sep = separating_edges(g);
        const int base = naive_components(g.vertex_count(), g.ends());
        for (int e = 0; e < g.edge_count(); ++e) {
            auto ends = g.ends();
            ends.erase(ends.begin() + e);
            bool expect = naive_components(g.vertex_count(), ends) > base;
            ASSERT_EQ(sep[e], expect) << "edge " << e;
            if (g.is_loop(e)) {
                ASSERT_FALSE(sep[e]);
            }
        }
    }
}

TEST(Graph, SeparatingEdgesAtMostVerticesMinusOne) {
    Rng rng(3);
    for (int it = 0; it < 2000; ++it) {
        Graph g = random_connected_graph(rng, uniform(rng, 1, 8), 0);
        g = random_connected_graph(rng, g.vertex_count(), uniform(rng, g.vertex_count() - 1, 12));
        auto sep = separating_edges(g);
        EXPECT_LE(std::count(sep.begin(), sep.end(), true), g.vertex_count() - 1);
    }
}

TEST(Graph, TreeLike) {
    EXPECT_FALSE(is_tree_like(banana()));
    EXPECT_TRUE(is_tree_like(Graph(2, {{0, 0}, {0, 1}, {1, 1}, {1, 1}})));
    EXPECT_THROW(is_tree_like(Graph(2, {{0, 0}})), Disconnected);
}

TEST(Graph, SpanningForestExamples) {
    SpanningForest f = spanning_forest(banana());
    EXPECT_EQ(f.in_forest, (std::vector<bool>{true, false}));
    SpanningForest loop = spanning_forest(Graph(1, {{0, 0}}));
    EXPECT_EQ(loop.in_forest, std::vector<bool>{false});
    EXPECT_EQ(loop.root[0], 0);
}

TEST(Graph, SpanningForestProperties) {
    Rng rng(4);
    for (int it = 0; it < 1000; ++it) {
        Graph g = random_graph(rng, uniform(rng, 1, 7), uniform(rng, 0, 9));
        SpanningForest f = spanning_forest(g);
        Components comp = components(g);
        int forest_edges = static_cast<int>(std::count(f.in_forest.begin(), f.in_forest.end(), true));
        EXPECT_EQ(forest_edges, g.vertex_count() - comp.count);
        std::vector<std::pair<int, int>> fe;
        for (int e = 0; e < g.edge_count(); ++e)
            if (f.in_forest[e]) fe.push_back(g.ends()[e]);
        EXPECT_EQ(naive_components(g.vertex_count(), fe), comp.count);
        std::vector<int> pos(g.vertex_count());
        for (std::size_t i = 0; i < f.order.size(); ++i) pos[f.order[i]] = static_cast<int>(i);
        for (int v = 0; v < g.vertex_count(); ++v) {
            int root = f.root[v];
            EXPECT_EQ(comp.of_vertex[root], comp.of_vertex[v]);
            for (int w = 0; w < g.vertex_count(); ++w)
                if (comp.of_vertex[w] == comp.of_vertex[v]) {
                    EXPECT_LE(root, w);
                }
            if (v == root) {
                EXPECT_EQ(f.parent_edge[v], -1);
            } else {
                int pe = f.parent_edge[v];
                EXPECT_EQ(g.head(pe), v);
                EXPECT_TRUE(f.in_forest[Graph::edge_of(pe)]);
                EXPECT_LT(pos[g.tail(pe)], pos[v]);
                EXPECT_EQ(f.depth[v], f.depth[g.tail(pe)] + 1);
            }
        }
    }
}

TEST(Graph, FundamentalCycles) {
    Graph b = banana();
    SpanningForest f = spanning_forest(b);
    EXPECT_EQ(fundamental_cycle(b, f, 2), (std::vector<int>{2, 1}));
    EXPECT_THROW(fundamental_cycle(b, f, 0), NotCotree);
    Graph l(1, {{0, 0}});
    EXPECT_EQ(fundamental_cycle(l, spanning_forest(l), 1), std::vector<int>{1});

    Rng rng(6);
    for (int it = 0; it < 1000; ++it) {
        Graph g = random_graph(rng, uniform(rng, 1, 6), uniform(rng, 1, 9));
        SpanningForest sf = spanning_forest(g);
        for (int oe = 0; oe < g.oriented_count(); ++oe) {
            if (sf.in_forest[Graph::edge_of(oe)]) {
                EXPECT_THROW(fundamental_cycle(g, sf, oe), NotCotree);
                continue;
            }
            auto c = fundamental_cycle(g, sf, oe);
            ASSERT_EQ(c.front(), oe);
            for (std::size_t i = 0; i < c.size(); ++i) {
                ASSERT_EQ(g.head(c[i]), g.tail(c[(i + 1) % c.size()]));
                if (i > 0) {
                    ASSERT_TRUE(sf.in_forest[Graph::edge_of(c[i])]);
                }
            }
        }
    }
}

TEST(Graph, ContractBananaEdge) {
    Contraction c = contract(banana(), {true, false});
    EXPECT_EQ(c.graph.vertex_count(), 1);
    EXPECT_EQ(c.graph.edge_count(), 1);
    EXPECT_TRUE(c.graph.is_loop(0));
    EXPECT_EQ(c.edge_map, (std::vector<int>{-1, 0}));
    EXPECT_EQ(c.edge_origin, std::vector<int>{1});
}

TEST(Graph, ContractionProperties) {
    Rng rng(7);
    for (int it = 0; it < 1000; ++it) {
        Graph g = random_graph(rng, uniform(rng, 1, 7), uniform(rng, 0, 9));
        std::vector<bool> flag(g.edge_count());
        std::vector<std::pair<int, int>> d;
        for (int e = 0; e < g.edge_count(); ++e) {
            flag[e] = uniform(rng, 0, 2) == 0;
            if (flag[e]) d.push_back(g.ends()[e]);
        }
        Contraction c = contract(g, flag);
        EXPECT_EQ(c.graph.vertex_count(), naive_components(g.vertex_count(), d));
        EXPECT_EQ(c.graph.edge_count(), g.edge_count() - static_cast<int>(d.size()));
        EXPECT_EQ(components(c.graph).count, components(g).count);
        Graph dg(g.vertex_count(), d);
        EXPECT_EQ(betti_number(g), betti_number(c.graph) + betti_number(dg));
        for (int e = 0; e < g.edge_count(); ++e) {
            if (flag[e]) {
                EXPECT_EQ(c.edge_map[e], -1);
                EXPECT_EQ(c.vertex_map[g.ends()[e].first], c.vertex_map[g.ends()[e].second]);
            } else {
                int ne = c.edge_map[e];
                EXPECT_EQ(c.edge_origin[ne], e);
                EXPECT_EQ(c.graph.ends()[ne].first, c.vertex_map[g.ends()[e].first]);
                EXPECT_EQ(c.graph.ends()[ne].second, c.vertex_map[g.ends()[e].second]);
            }
        }
    }
}

TEST(Graph, CanonicalFormInvariantUnderRelabelling) {
    Rng rng(8);
    for (int it = 0; it < 1000; ++it) {
        const int nv = uniform(rng, 1, 6);
        Graph g = random_graph(rng, nv, uniform(rng, 0, 8));
        std::vector<int> vl(nv), el(g.edge_count());
        for (auto& x : vl) x = uniform(rng, 0, 2);
        for (auto& x : el) x = uniform(rng, 2, 3);
        std::vector<int> perm(nv);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<int, int>> ends;
        std::vector<int> order(g.edge_count());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> el2, vl2(nv);
        for (int e : order) {
            auto [a, b] = g.ends()[e];
            if (uniform(rng, 0, 1)) std::swap(a, b);
            ends.emplace_back(perm[a], perm[b]);
            el2.push_back(el[e]);
        }
        for (int v = 0; v < nv; ++v) vl2[perm[v]] = vl[v];
        Graph h(nv, ends);
        EXPECT_EQ(canonical_form(g, vl, el), canonical_form(h, vl2, el2));
        EXPECT_TRUE(isomorphic(g, h));
    }
}

TEST(Graph, CanonicalFormSeparatesNonIsomorphic) {
    Rng rng(9);
    int distinct = 0;
    for (int it = 0; it < 3000; ++it) {
        const int nv = uniform(rng, 1, 4);
        const int ne = uniform(rng, 0, 4);
        Graph a = random_graph(rng, nv, ne), b = random_graph(rng, nv, ne);
        std::vector<int> va(nv), vb(nv), ea(ne), eb(ne);
        for (auto* v : {&va, &vb})
            for (auto& x : *v) x = uniform(rng, 0, 1);
        for (auto* v : {&ea, &eb})
            for (auto& x : *v) x = uniform(rng, 2, 3);
        bool iso = brute_isomorphic(a, va, ea, b, vb, eb);
        ASSERT_EQ(canonical_form(a, va, ea) == canonical_form(b, vb, eb), iso);
        ASSERT_EQ(isomorphic(a, b), brute_isomorphic(a, {}, {}, b, {}, {}));
        distinct += iso ? 0 : 1;
    }
    EXPECT_GT(distinct, 100);
}

TEST(Graph, ActionValidation) {
    auto c2 = group("C2");
    // C2 swapping the two vertices of a banana and its two edges
    Graph g = banana();
    std::vector<int> vp{0, 1, 1, 0};
    std::vector<int> ep{0, 1, 2, 3, 3, 2, 1, 0};
    GraphGroupAction act(c2, g, vp, ep);
    EXPECT_NO_THROW(act.validate());
    std::vector<int> bad{0, 1, 2, 3, 2, 3, 0, 1};
    EXPECT_THROW(GraphGroupAction(c2, g, vp, bad).validate(), std::invalid_argument);
    Quotient qa = quotient_graph(act);
    EXPECT_EQ(qa.graph.vertex_count(), 1);
    EXPECT_EQ(qa.graph.edge_count(), 1);
    GraphGroupAction inverting(c2, g, vp, {0, 1, 2, 3, 1, 0, 3, 2});
    EXPECT_NO_THROW(inverting.validate());
    EXPECT_THROW(quotient_graph(inverting), std::invalid_argument);
    // swapping the edges only
    GraphGroupAction swap(c2, g, {0, 1, 0, 1}, {0, 1, 2, 3, 2, 3, 0, 1});
    EXPECT_NO_THROW(swap.validate());
    Quotient q = quotient_graph(swap);
    EXPECT_EQ(q.graph.vertex_count(), 2);
    EXPECT_EQ(q.graph.edge_count(), 1);
    EXPECT_THROW(contract(swap, {true, false}), UnstableSet);
    ActionContraction ac = contract(swap, {true, true});
    EXPECT_EQ(ac.action.graph().vertex_count(), 1);
    EXPECT_EQ(ac.action.graph().edge_count(), 0);
}
