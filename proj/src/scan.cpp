#include "ghostaut/scan.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "ghostaut/errors.hpp"

namespace ghostaut {

void ScanBounds::validate() const {
    if (max_vertices < 1 || max_edges < 0 || max_genus_per_vertex < 0) throw DomainError("bounds must be positive");
    if (min_total_genus < 2) throw DomainError("min_total_genus must be at least 2");
    if (max_total_genus < min_total_genus) throw DomainError("max_total_genus below min_total_genus");
    if (markings < 0) throw DomainError("negative marking count");
    if (jobs < 1) throw DomainError("jobs must be positive");
    for (int r : allowed_r)
        if (r < 2) throw DomainError("allowed r values must be at least 2");
}

std::vector<int> base_canonical_form(const DecoratedGraph& base) {
    std::vector<int> vl;
    for (int v = 0; v < base.graph.vertex_count(); ++v) vl.push_back(base.genus[v] * 64 + base.markings[v]);
    return canonical_form(base.graph, vl, base.r);
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int x = 0; x <= total; ++x) {
        cur.push_back(x);
        compositions(total - x, parts - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<int> default_r(const FiniteGroup& g) {
    std::vector<int> r;
    for (int d = 2; d <= g.order(); ++d)
        if (g.order() % d == 0) r.push_back(d);
    return r;
}

std::vector<std::vector<Element>> edge_choices(const DecoratedGraph& base, const FiniteGroup& G, bool reduce) {
    std::vector<std::vector<Element>> out;
    for (int e = 0; e < base.graph.edge_count(); ++e) {
        std::vector<Element> c;
        for (Element x = 0; x < G.order(); ++x) {
            if (G.element_order(x) != base.r[e]) continue;
            if (reduce && e == 0 && G.class_representative(G.class_of(x)) != x) continue;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<DecoratedGraph> enumerate_bases(const ScanBounds& bounds, const FiniteGroup& group) {
    bounds.validate();
    std::vector<int> rs = bounds.allowed_r.empty() ? default_r(group) : bounds.allowed_r;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::vector<DecoratedGraph> out;
    std::set<std::vector<int>> seen;
    for (int nv = 1; nv <= bounds.max_vertices; ++nv) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < nv; ++u)
            for (int w = u; w < nv; ++w) pairs.emplace_back(u, w);
        const int ntypes = static_cast<int>(pairs.size() * rs.size());
        std::vector<std::vector<int>> marks;
        std::vector<int> cur;
        compositions(bounds.markings, nv, cur, marks);
        for (int ne = 0; ne <= bounds.max_edges; ++ne) {
            std::vector<int> pick(ne, 0);
            while (true) {
                std::vector<std::pair<int, int>> ends;
                std::vector<int> r;
                for (int t : pick) {
                    ends.push_back(pairs[t / rs.size()]);
                    r.push_back(rs[t % rs.size()]);
                }
                Graph g(nv, ends);
                if (components(g).count == 1) {
                    const int b1 = betti_number(g);
                    std::vector<int> genus(nv, 0);
                    while (true) {
                        int gsum = 0;
                        for (int x : genus) gsum += x;
                        int total = gsum + b1;
                        if (total >= bounds.min_total_genus && total <= bounds.max_total_genus) {
                            for (const auto& m : marks) {
                                DecoratedGraph d{g, genus, m, r};
                                bool stable = true;
                                for (int v = 0; v < nv && stable; ++v) stable = d.stable_at(v);
                                if (!stable) continue;
                                if (seen.insert(base_canonical_form(d)).second) out.push_back(std::move(d));
                            }
                        }
                        int i = nv - 1;
                        while (i >= 0 && ++genus[i] > bounds.max_genus_per_vertex) genus[i--] = 0;
                        if (i < 0) break;
                    }
                }
                // next multiset (nondecreasing type indices)
                int i = ne - 1;
                while (i >= 0 && pick[i] == ntypes - 1) --i;
                if (i < 0) break;
                ++pick[i];
                for (int j = i + 1; j < ne; ++j) pick[j] = pick[i];
            }
        }
    }
    return out;
}

std::uint64_t cover_space_size(const DecoratedGraph& base, const FiniteGroup& group, bool conjugacy_reduction) {
    auto choices = edge_choices(base, group, conjugacy_reduction);
    SpanningForest f = spanning_forest(base.graph);
    long double s = 1;
    for (const auto& c : choices) s *= static_cast<long double>(c.size());
    for (int e = 0; e < base.graph.edge_count(); ++e)
        if (!f.in_forest[e]) s *= group.order();
    for (int m : base.markings)
        for (int j = 0; j < m; ++j) s *= group.order();
    if (s > 1.8e19L) return UINT64_MAX;
    return static_cast<std::uint64_t>(s);
}

void enumerate_covers(const DecoratedGraph& base, const MonodromyTable& table, bool conjugacy_reduction,
                      std::uint64_t budget, const std::function<void(const CoverDatum&)>& visit) {
    const FiniteGroup& G = table.group();
    const SubgroupLattice& lat = table.lattice();
    const Graph& gr = base.graph;
    const int n = G.order();
    for (int v = 0; v < gr.vertex_count(); ++v)
        if (base.genus[v] > table.max_genus()) throw DomainError("vertex genus exceeds the monodromy table");
    std::uint64_t space = cover_space_size(base, G, conjugacy_reduction);
    if (space > budget) throw BudgetExceeded("cover space exceeds the budget", space, budget);

    auto choices = edge_choices(base, G, conjugacy_reduction);
    for (const auto& c : choices)
        if (c.empty()) return;
    SpanningForest forest = spanning_forest(gr);
    std::vector<int> cotree;
    for (int e = 0; e < gr.edge_count(); ++e)
        if (!forest.in_forest[e]) cotree.push_back(e);
    const int ne = gr.edge_count();
    const int nm = base.marking_count();
    // digits: edge choices, cotree voltages, marking entries
    std::vector<int> radix;
    for (const auto& c : choices) radix.push_back(static_cast<int>(c.size()));
    for (std::size_t i = 0; i < cotree.size(); ++i) radix.push_back(n);
    for (int i = 0; i < nm; ++i) radix.push_back(n);
    std::vector<int> digit(radix.size(), 0);

    std::shared_ptr<const FiniteGroup> gptr = table.group_ptr();
    CoverDatum datum;
    datum.base = base;
    datum.monodromy.resize(gr.vertex_count());
    datum.voltages.assign(gr.oriented_count(), G.identity());
    std::vector<Element> c(ne);
    std::vector<std::vector<std::pair<int, const MonodromyTable::Entry*>>> options(gr.vertex_count());
    std::vector<std::vector<Element>> entries(gr.vertex_count());
    std::vector<int> mark_offset(gr.vertex_count() + 1, 0);
    for (int v = 0; v < gr.vertex_count(); ++v) mark_offset[v + 1] = mark_offset[v] + base.markings[v];

    while (true) {
        for (int e = 0; e < ne; ++e) c[e] = choices[e][digit[e]];
        for (std::size_t i = 0; i < cotree.size(); ++i) {
            Element g = digit[ne + i];
            datum.voltages[2 * cotree[i]] = g;
            datum.voltages[2 * cotree[i] + 1] = G.inv(g);
        }
        bool ok = true;
        for (int v = 0; v < gr.vertex_count() && ok; ++v) {
            auto& ent = entries[v];
            ent.clear();
            Element p = G.identity();
            int hs = lat.trivial();
            for (int oe : gr.out_edges(v)) {
                int e = Graph::edge_of(oe);
                Element x;
                if ((oe & 1) == 0) {
                    x = c[e];
                } else {
                    Element g = datum.voltages[2 * e];
                    x = G.mul(G.mul(G.inv(g), G.inv(c[e])), g);
                }
                ent.push_back(x);
                p = G.mul(p, x);
                hs = lat.join(hs, lat.cyclic(x));
            }
            for (int j = 0; j < base.markings[v]; ++j) {
                Element x = digit[ne + cotree.size() + mark_offset[v] + j];
                ent.push_back(x);
                p = G.mul(p, x);
                hs = lat.join(hs, lat.cyclic(x));
            }
            auto& opt = options[v];
            opt.clear();
            for (const auto& en : table.entries(base.genus[v], G.inv(p))) {
                int h = lat.join(hs, en.subgroup);
                bool dup = false;
                for (const auto& o : opt) dup = dup || o.first == h;
                if (!dup) opt.emplace_back(h, &en);
            }
            ok = !opt.empty();
        }
        if (ok) {
            std::vector<std::size_t> pick(gr.vertex_count(), 0);
            while (true) {
                for (int v = 0; v < gr.vertex_count(); ++v) {
                    auto& t = datum.monodromy[v];
                    t = options[v][pick[v]].second->witness;
                    t.insert(t.end(), entries[v].begin(), entries[v].end());
                }
                datum.group = gptr;
                visit(datum);
                int v = gr.vertex_count() - 1;
                while (v >= 0 && ++pick[v] == options[v].size()) pick[v--] = 0;
                if (v < 0) break;
            }
        }
        int i = static_cast<int>(digit.size()) - 1;
        while (i >= 0 && ++digit[i] == radix[i]) digit[i--] = 0;
        if (i < 0) break;
    }
}

std::vector<int> cover_signature(const CoverDatum& datum, const SubgroupLattice& lattice) {
    const FiniteGroup& G = *datum.group;
    const Graph& gr = datum.base.graph;
    std::vector<int> sig;
    std::vector<Subgroup> hs;
    for (int v = 0; v < gr.vertex_count(); ++v) {
        hs.push_back(datum.vertex_subgroup(v));
        sig.push_back(lattice.id_of(hs.back().mask()));
    }
    for (int e = 0; e < gr.edge_count(); ++e) {
        sig.push_back(datum.edge_index(2 * e));
        Element g = datum.voltages[2 * e];
        const Subgroup& h = hs[gr.head(2 * e)];
        Element least = G.order();
        for (Element y : h.elements()) least = std::min(least, G.mul(g, y));
        sig.push_back(least);
    }
    return sig;
}

std::string ScanSummary::status() const {
    if (juniors > 0) return "witnesses";
    if (skipped_bases > 0 || stopped_early) return "incomplete";
    return "clean";
}

bool revalidate_witness(const Witness& w) {
    CoverGraph cover = build_cover_graph(w.datum);
    validate_cover(cover);
    GhostContext ctx(cover);
    if (!ctx.lifts(w.lifted_representative).lifts) return false;
    // QR factors from single-edge elements, tested one by one
    const auto& r = ctx.r();
    std::vector<int> mod(r.size());
    for (std::size_t e = 0; e < r.size(); ++e) {
        int q = 1;
        for (int k = 1; k < r[e]; ++k) {
            GhostElement a;
            a.k.assign(r.size(), 0);
            a.k[e] = k;
            if (ctx.lifts(a).lifts) {
                q = r[e] / std::gcd(k, r[e]);
                break;
            }
        }
        mod[e] = r[e] / q;
    }
    AgeValue a = rescaled_age(w.lifted_representative, mod);
    return a > 0 && a < 1 && a == w.verdict.witness->age;
}

namespace {

struct CachedVerdict {
    bool ok = false;
    JuniorVerdict verdict;
    std::uint64_t skipped_space = 0;
};

void scan_base(const ScanBounds& bounds, const MonodromyTable& table, BaseReport& rep, std::vector<Witness>& wit) {
    std::map<std::vector<int>, CachedVerdict> cache;
    try {
        enumerate_covers(rep.base, table, bounds.conjugacy_reduction, bounds.cover_budget, [&](const CoverDatum& d) {
            ++rep.covers;
            auto sig = cover_signature(d, table.lattice());
            auto it = cache.find(sig);
            if (it == cache.end()) {
                CachedVerdict cv;
                try {
                    CoverGraph cover = build_cover_graph(d);
                    GhostContext ctx(cover);
                    cv.verdict = junior_verdict(lifted_ghost_group(ctx, bounds.ghost_budget), ctx.separating());
                    cv.ok = true;
                } catch (const BudgetExceeded& ex) {
                    cv.skipped_space = ex.requested;
                }
                it = cache.emplace(std::move(sig), std::move(cv)).first;
                ++rep.distinct;
                if (it->second.ok && it->second.verdict.is_junior) {
                    Witness w;
                    w.base_id = rep.base_id;
                    w.datum = d;
                    w.verdict = it->second.verdict;
                    w.lifted_representative = w.verdict.witness->representative;
                    wit.push_back(std::move(w));
                }
            }
            const CachedVerdict& cv = it->second;
            if (!cv.ok) {
                rep.skipped = true;
                rep.skipped_space += cv.skipped_space;
                return;
            }
            const JuniorVerdict& v = cv.verdict;
            ++rep.lifted_histogram[v.lifted_order];
            if (v.is_junior) ++rep.juniors;
            if (!v.separating_model_holds) ++rep.separating_model_violations;
            if (v.separating_model_junior) ++rep.separating_model_juniors;
            if (!v.lifted_closed) ++rep.non_closed;
            if (!v.qr_free_check) ++rep.qr_free_failures;
        });
    } catch (const BudgetExceeded& ex) {
        rep.skipped = true;
        rep.skipped_space = ex.requested;
    }
}

}  // namespace

ScanResult scan_j_locus(const ScanBounds& bounds) {
    return scan_j_locus(bounds, std::make_shared<const FiniteGroup>(FiniteGroup::builtin(bounds.group)));
}

ScanResult scan_j_locus(const ScanBounds& bounds, std::shared_ptr<const FiniteGroup> group) {
    bounds.validate();
    ScanResult res;
    res.bounds = bounds;
    auto bases = enumerate_bases(bounds, *group);
    MonodromyTable table(group, bounds.max_genus_per_vertex);
    const std::size_t nb = bases.size();
    std::vector<BaseReport> reports(nb);
    std::vector<std::vector<Witness>> wits(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        reports[i].base_id = static_cast<int>(i);
        reports[i].canonical = base_canonical_form(bases[i]);
        reports[i].base = std::move(bases[i]);
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> found{0};
    std::vector<bool> done(nb, false);
    std::mutex mu;
    auto worker = [&]() {
        while (true) {
            if (bounds.stop_after_witnesses && found.load() >= bounds.stop_after_witnesses) return;
            std::size_t i = next.fetch_add(1);
            if (i >= nb) return;
            scan_base(bounds, table, reports[i], wits[i]);
            found += wits[i].size();
            std::lock_guard<std::mutex> lock(mu);
            done[i] = true;
        }
    };
    const int jobs = std::max(1, std::min<int>(bounds.jobs, static_cast<int>(std::max<std::size_t>(nb, 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // keep the contiguous prefix of processed bases; when stopping early,
    // cut right after the base where the witness count was reached
    std::uint64_t acc = 0;
    std::size_t cut = nb;
    for (std::size_t i = 0; i < nb; ++i) {
        if (!done[i]) {
            cut = i;
            break;
        }
        acc += wits[i].size();
        if (bounds.stop_after_witnesses && acc >= bounds.stop_after_witnesses) {
            cut = i + 1;
            break;
        }
    }
    res.summary.stopped_early = cut < nb;
    for (std::size_t i = 0; i < cut; ++i) {
        BaseReport& r = reports[i];
        ScanSummary& s = res.summary;
        ++s.bases;
        s.instances += r.covers;
        s.distinct += r.distinct;
        s.juniors += r.juniors;
        s.skipped_bases += r.skipped ? 1 : 0;
        s.separating_model_violations += r.separating_model_violations;
        s.separating_model_juniors += r.separating_model_juniors;
        s.non_closed += r.non_closed;
        s.qr_free_failures += r.qr_free_failures;
        for (auto [k, v] : r.lifted_histogram) s.lifted_histogram[k] += v;
        for (auto& w : wits[i]) {
            w.revalidated = revalidate_witness(w);
            res.witnesses.push_back(std::move(w));
        }
        res.bases.push_back(std::move(r));
    }
    return res;
}

}  // namespace ghostaut
