#include "ghostaut/cover.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ghostaut/errors.hpp"

namespace ghostaut {

int DecoratedGraph::total_genus() const {
    int s = 0;
    for (int g : genus) s += g;
    return s + betti_number(graph);
}

int DecoratedGraph::marking_count() const {
    int s = 0;
    for (int m : markings) s += m;
    return s;
}

void DecoratedGraph::validate() const {
    const int nv = graph.vertex_count();
    if (static_cast<int>(genus.size()) != nv || static_cast<int>(markings.size()) != nv)
        throw IllFormed("genus/markings do not match the vertex count");
    if (static_cast<int>(r.size()) != graph.edge_count()) throw IllFormed("r does not match the edge count");
    if (nv == 0) throw IllFormed("empty graph");
    if (components(graph).count != 1) throw IllFormed("base graph is not connected");
    for (int v = 0; v < nv; ++v) {
        if (genus[v] < 0 || markings[v] < 0) throw IllFormed("negative genus or marking count");
        if (!stable_at(v)) throw IllFormed("vertex " + std::to_string(v) + " is not stable");
    }
    for (int x : r)
        if (x < 1) throw IllFormed("r(e) must be positive");
    if (total_genus() < 2) throw IllFormed("total genus must be at least 2");
}

Element CoverDatum::edge_index(int oriented_edge) const {
    const Graph& g = base.graph;
    int v = g.tail(oriented_edge);
    const auto& out = g.out_edges(v);
    auto pos = std::find(out.begin(), out.end(), oriented_edge) - out.begin();
    return monodromy[v][2 * base.genus[v] + pos];
}

Element CoverDatum::marking_index(int v, int j) const {
    return monodromy[v][2 * base.genus[v] + base.graph.degree(v) + j];
}

Subgroup CoverDatum::vertex_subgroup(int v) const {
    return generate(*group, monodromy[v]);
}

void CoverDatum::validate() const {
    if (!group) throw IllFormed("no group");
    base.validate();
    const FiniteGroup& G = *group;
    const Graph& g = base.graph;
    if (static_cast<int>(monodromy.size()) != g.vertex_count()) throw IllFormed("one monodromy tuple per vertex expected");
    if (static_cast<int>(voltages.size()) != g.oriented_count()) throw IllFormed("one voltage per oriented edge expected");
    for (Element x : voltages)
        if (x < 0 || x >= G.order()) throw IllFormed("voltage out of range");
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& t = monodromy[v];
        std::size_t want = 2 * base.genus[v] + g.degree(v) + base.markings[v];
        if (t.size() != want)
            throw IllFormed("vertex " + std::to_string(v) + ": tuple has " + std::to_string(t.size()) +
                            " entries, expected " + std::to_string(want));
        for (Element x : t)
            if (x < 0 || x >= G.order()) throw IllFormed("monodromy entry out of range");
        Element p = G.identity();
        for (int i = 0; i < base.genus[v]; ++i) p = G.mul(p, G.commutator(t[2 * i], t[2 * i + 1]));
        for (std::size_t j = 2 * base.genus[v]; j < t.size(); ++j) p = G.mul(p, t[j]);
        if (p != G.identity()) throw IllFormed("vertex " + std::to_string(v) + ": surface relation fails");
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        int oe = 2 * e;
        Element ge = voltages[oe];
        if (voltages[oe + 1] != G.inv(ge)) throw IllFormed("edge " + std::to_string(e) + ": voltages are not inverse");
        Element c = edge_index(oe), cm = edge_index(oe + 1);
        if (G.element_order(c) != base.r[e])
            throw IllFormed("edge " + std::to_string(e) + ": index has order " + std::to_string(G.element_order(c)) +
                            ", r = " + std::to_string(base.r[e]));
        if (cm != G.mul(G.mul(G.inv(ge), G.inv(c)), ge))
            throw IllFormed("edge " + std::to_string(e) + ": branch indices do not match");
    }
}

CoverGraph build_cover_graph(const CoverDatum& datum) {
    datum.validate();
    const FiniteGroup& G = *datum.group;
    const Graph& g = datum.base.graph;
    const int n = G.order();
    CoverGraph cov;
    cov.base = datum.base;

    std::vector<std::vector<int>> vcoset(g.vertex_count());
    std::vector<int> voff(g.vertex_count() + 1, 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        cov.vertex_subgroups.push_back(datum.vertex_subgroup(v));
        std::vector<Element> reps;
        vcoset[v] = left_coset_ids(G, cov.vertex_subgroups[v], &reps);
        voff[v + 1] = voff[v] + static_cast<int>(reps.size());
        for (Element x : reps) {
            cov.vertex_proj.push_back(v);
            cov.vertex_rep.push_back(x);
        }
    }
    std::vector<std::vector<int>> ecoset(g.edge_count());
    std::vector<int> eoff(g.edge_count() + 1, 0);
    std::vector<std::pair<int, int>> ends;
    for (int e = 0; e < g.edge_count(); ++e) {
        Element c = datum.edge_index(2 * e);
        Element ge = datum.voltages[2 * e];
        std::vector<Element> reps;
        ecoset[e] = left_coset_ids(G, generate(G, std::vector<Element>{c}), &reps);
        eoff[e + 1] = eoff[e] + static_cast<int>(reps.size());
        int t = g.tail(2 * e), h = g.head(2 * e);
        for (Element x : reps) {
            ends.emplace_back(voff[t] + vcoset[t][x], voff[h] + vcoset[h][G.mul(x, ge)]);
            cov.edge_proj.push_back(2 * e);
            cov.edge_proj.push_back(2 * e + 1);
            cov.edge_rep.push_back(x);
            cov.edge_rep.push_back(G.mul(x, ge));
            Element b = G.conjugate(x, c);
            cov.index.push_back(b);
            cov.index.push_back(G.inv(b));
        }
    }
    Graph up(voff.back(), std::move(ends));
    std::vector<int> vperm(static_cast<std::size_t>(n) * up.vertex_count());
    std::vector<int> eperm(static_cast<std::size_t>(n) * up.oriented_count());
    for (Element x = 0; x < n; ++x) {
        for (int w = 0; w < up.vertex_count(); ++w) {
            int v = cov.vertex_proj[w];
            vperm[x * up.vertex_count() + w] = voff[v] + vcoset[v][G.mul(x, cov.vertex_rep[w])];
        }
        for (int m = 0; m < up.edge_count(); ++m) {
            int e = Graph::edge_of(cov.edge_proj[2 * m]);
            int img = eoff[e] + ecoset[e][G.mul(x, cov.edge_rep[2 * m])];
            eperm[x * up.oriented_count() + 2 * m] = 2 * img;
            eperm[x * up.oriented_count() + 2 * m + 1] = 2 * img + 1;
        }
    }
    cov.action = GraphGroupAction(datum.group, std::move(up), std::move(vperm), std::move(eperm));
    return cov;
}

void validate_cover(const CoverGraph& cover) {
    const FiniteGroup& G = cover.group();
    const Graph& up = cover.action.graph();
    const Graph& base = cover.base.graph;
    try {
        cover.action.validate();
        validate_cochain(cover.action, Cochain1{cover.index});
    } catch (const std::invalid_argument& ex) {
        throw IllFormed(std::string("cover graph: ") + ex.what());
    }
    for (int oe = 0; oe < up.oriented_count(); ++oe) {
        int be = cover.edge_proj[oe];
        if (cover.vertex_proj[up.tail(oe)] != base.tail(be) || cover.vertex_proj[up.head(oe)] != base.head(be))
            throw IllFormed("projection is not a graph morphism");
        ElementMask stab = 0;
        for (Element x = 0; x < G.order(); ++x)
            if (cover.action.act_edge(x, oe) == oe) stab |= ElementMask{1} << x;
        Subgroup gen = generate(G, std::vector<Element>{cover.index[oe]});
        if (stab != gen.mask()) throw IllFormed("edge stabilizer is not generated by the index");
        if (gen.order() != cover.base.r[Graph::edge_of(be)]) throw IllFormed("index order differs from r");
    }
    std::vector<int> vcount(base.vertex_count(), 0), ecount(base.oriented_count(), 0);
    for (int v : cover.vertex_proj) ++vcount[v];
    for (int be : cover.edge_proj) ++ecount[be];
    for (int v = 0; v < base.vertex_count(); ++v)
        if (vcount[v] * cover.vertex_subgroups[v].order() != G.order()) throw IllFormed("vertex fiber size");
    for (int be = 0; be < base.oriented_count(); ++be)
        if (ecount[be] * cover.base.r[Graph::edge_of(be)] != G.order()) throw IllFormed("edge fiber size");
    Quotient q = quotient_graph(cover.action);
    if (q.graph.vertex_count() != base.vertex_count() || q.graph.edge_count() != base.edge_count())
        throw IllFormed("quotient differs from the base");
    // each orbit is exactly one fiber
    for (int w = 0; w < up.vertex_count(); ++w)
        for (int w2 = 0; w2 < up.vertex_count(); ++w2)
            if ((q.vertex_map[w] == q.vertex_map[w2]) != (cover.vertex_proj[w] == cover.vertex_proj[w2]))
                throw IllFormed("vertex orbits differ from fibers");
    for (int oe = 0; oe < up.oriented_count(); ++oe)
        for (int oe2 = 0; oe2 < up.oriented_count(); ++oe2)
            if ((q.edge_map[oe] == q.edge_map[oe2]) != (cover.edge_proj[oe] == cover.edge_proj[oe2]))
                throw IllFormed("edge orbits differ from fibers");
}

CoverContraction contract_trivial(const CoverGraph& cover) {
    const FiniteGroup& G = cover.group();
    const Graph& up = cover.action.graph();
    CoverContraction out;
    std::vector<bool> dup(up.edge_count()), dbase(cover.base.graph.edge_count());
    for (int m = 0; m < up.edge_count(); ++m) dup[m] = cover.index[2 * m] == G.identity();
    for (int e = 0; e < cover.base.graph.edge_count(); ++e) dbase[e] = cover.base.r[e] == 1;
    ActionContraction ac = contract(cover.action, dup);
    out.action = std::move(ac.action);
    out.upstairs = std::move(ac.maps);
    out.base = contract(cover.base.graph, dbase);
    for (int e0 : out.base.edge_origin) out.r.push_back(cover.base.r[e0]);
    const Graph& up0 = out.action.graph();
    out.vertex_proj.assign(up0.vertex_count(), -1);
    for (int w = 0; w < up.vertex_count(); ++w)
        out.vertex_proj[out.upstairs.vertex_map[w]] = out.base.vertex_map[cover.vertex_proj[w]];
    for (int oe = 0; oe < up0.oriented_count(); ++oe) {
        int old = 2 * out.upstairs.edge_origin[Graph::edge_of(oe)] + (oe & 1);
        out.index.push_back(cover.index[old]);
        int be = cover.edge_proj[old];
        int be0 = out.base.edge_map[Graph::edge_of(be)];
        if (be0 < 0) throw std::logic_error("nontrivial upstairs edge over a contracted base edge");
        out.edge_proj.push_back(2 * be0 + (be & 1));
    }
    return out;
}

std::vector<int> type_function(const CoverGraph& cover) {
    const FiniteGroup& G = cover.group();
    std::vector<int> m(cover.base.graph.oriented_count(), -1);
    for (int oe = 0; oe < cover.action.graph().oriented_count(); ++oe) {
        int be = cover.edge_proj[oe];
        int cls = G.class_of(cover.index[oe]);
        if (m[be] < 0)
            m[be] = cls;
        else if (m[be] != cls)
            throw IllFormed("lifts of one edge carry non-conjugate indices");
    }
    for (int be = 0; be < static_cast<int>(m.size()); ++be) {
        Element rep = G.class_representative(m[be]);
        if (m[Graph::mate(be)] != G.class_of(G.inv(rep))) throw IllFormed("type of the reversed edge is not inverse");
    }
    return m;
}

MonodromyTable::MonodromyTable(std::shared_ptr<const FiniteGroup> group, int max_genus)
    : group_(std::move(group)), lattice_(*group_) {
    const FiniteGroup& G = *group_;
    const int n = G.order();
    by_value_.assign(max_genus + 1, std::vector<std::vector<Entry>>(n));
    by_value_[0][G.identity()].push_back({lattice_.trivial(), {}});
    // subgroup generated by a pair, cached
    std::vector<int> pair_sub(static_cast<std::size_t>(n) * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) pair_sub[a * n + b] = lattice_.join(lattice_.cyclic(a), lattice_.cyclic(b));
    for (int g = 1; g <= max_genus; ++g) {
        std::vector<std::map<int, std::size_t>> seen(n);
        for (Element p = 0; p < n; ++p) {
            for (const Entry& prev : by_value_[g - 1][p]) {
                for (Element a = 0; a < n; ++a) {
                    for (Element b = 0; b < n; ++b) {
                        Element q = G.mul(p, G.commutator(a, b));
                        int h = lattice_.join(prev.subgroup, pair_sub[a * n + b]);
                        if (seen[q].count(h)) continue;
                        seen[q][h] = by_value_[g][q].size();
                        Entry e{h, prev.witness};
                        e.witness.push_back(a);
                        e.witness.push_back(b);
                        by_value_[g][q].push_back(std::move(e));
                    }
                }
            }
        }
        for (auto& list : by_value_[g])
            std::sort(list.begin(), list.end(), [](const Entry& x, const Entry& y) { return x.subgroup < y.subgroup; });
    }
}

HurwitzResult hurwitz_realizable(const MonodromyTable& table, int genus, const std::vector<int>& classes,
                                 std::optional<int> image_class, std::uint64_t budget) {
    const FiniteGroup& G = table.group();
    const SubgroupLattice& lat = table.lattice();
    if (genus < 0 || genus > table.max_genus()) throw DomainError("genus outside the precomputed table");
    for (int c : classes)
        if (c < 0 || c >= G.class_count()) throw DomainError("conjugacy class index out of range");
    std::vector<SubgroupClass> sc;
    if (image_class) {
        sc = subgroup_classes(G);
        if (*image_class < 0 || *image_class >= static_cast<int>(sc.size())) throw DomainError("image class out of range");
    }
    std::uint64_t space = 1;
    for (std::size_t j = 1; j < classes.size(); ++j) {
        space *= G.class_members(classes[j]).size();
        if (space > budget) throw BudgetExceeded("Hurwitz search space exceeds the budget", space, budget);
    }
    const int k = static_cast<int>(classes.size());
    std::vector<std::size_t> idx(k, 0);
    std::vector<Element> cs(k);
    HurwitzResult res;
    while (true) {
        Element p = G.identity();
        int hsub = lat.trivial();
        for (int j = 0; j < k; ++j) {
            cs[j] = j == 0 ? G.class_representative(classes[0]) : G.class_members(classes[j])[idx[j]];
            p = G.mul(p, cs[j]);
            hsub = lat.join(hsub, lat.cyclic(cs[j]));
        }
        for (const auto& entry : table.entries(genus, G.inv(p))) {
            int h = lat.join(hsub, entry.subgroup);
            if (image_class && subgroup_class_index(sc, lat.at(h)) != *image_class) continue;
            res.realizable = true;
            res.tuple = entry.witness;
            res.tuple.insert(res.tuple.end(), cs.begin(), cs.end());
            return res;
        }
        int j = k - 1;
        while (j >= 1 && ++idx[j] == G.class_members(classes[j]).size()) idx[j--] = 0;
        if (j < 1) break;
    }
    return res;
}

bool abelian_two_point_check(const CoverDatum& datum) {
    const FiniteGroup& G = *datum.group;
    if (!G.is_abelian()) throw NotAbelian("group is not abelian");
    if (datum.base.marking_count() != 2) throw DomainError("exactly two markings expected");
    std::vector<Element> h;
    for (int v = 0; v < datum.base.graph.vertex_count(); ++v)
        for (int j = 0; j < datum.base.markings[v]; ++j) h.push_back(datum.marking_index(v, j));
    return G.mul(h[0], h[1]) == G.identity();
}

}  // namespace ghostaut
