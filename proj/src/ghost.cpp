#include "ghostaut/ghost.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <set>
#include <stdexcept>

#include "ghostaut/errors.hpp"

namespace ghostaut {

std::string to_string(const AgeValue& a) {
    return std::to_string(a.numerator()) + "/" + std::to_string(a.denominator());
}

AgeValue parse_age(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return AgeValue(std::stoll(s));
    return AgeValue(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

bool GhostElement::is_zero() const {
    return std::all_of(k.begin(), k.end(), [](int x) { return x == 0; });
}

int GhostElement::support_size() const {
    return static_cast<int>(std::count_if(k.begin(), k.end(), [](int x) { return x != 0; }));
}

GhostGroup::GhostGroup(std::vector<int> r, std::uint64_t cap) : r_(std::move(r)) {
    for (int x : r_) {
        if (x < 1) throw DomainError("r(e) must be positive");
        size_ *= static_cast<std::uint64_t>(x);
        if (size_ > cap) throw BudgetExceeded("ghost group exceeds the budget", size_, cap);
    }
}

GhostElement GhostGroup::at(std::uint64_t i) const {
    GhostElement a;
    a.k.assign(r_.size(), 0);
    for (int e = static_cast<int>(r_.size()) - 1; e >= 0; --e) {
        a.k[e] = static_cast<int>(i % r_[e]);
        i /= r_[e];
    }
    return a;
}

std::uint64_t GhostGroup::index_of(const GhostElement& a) const {
    std::uint64_t i = 0;
    for (std::size_t e = 0; e < r_.size(); ++e) i = i * r_[e] + a.k[e];
    return i;
}

GhostElement GhostGroup::add(const GhostElement& a, const GhostElement& b) const {
    GhostElement c;
    for (std::size_t e = 0; e < r_.size(); ++e) c.k.push_back((a.k[e] + b.k[e]) % r_[e]);
    return c;
}

GhostElement GhostGroup::negate(const GhostElement& a) const {
    GhostElement c;
    for (std::size_t e = 0; e < r_.size(); ++e) c.k.push_back((r_[e] - a.k[e]) % r_[e]);
    return c;
}

GhostGroup ghost_group(const std::vector<int>& r, std::uint64_t cap) {
    for (int x : r)
        if (x < 2) throw DomainError("ghost group expects r(e) >= 2 on every edge");
    return GhostGroup(r, cap);
}

GhostContext::GhostContext(const CoverGraph& cover)
    : contr_(contract_trivial(cover)), sep_(separating_edges(contr_.base.graph)), image_(contr_.action) {
    const FiniteGroup& G = cover.group();
    for (int be : contr_.edge_proj) up_edge_base_.push_back(Graph::edge_of(be));
    pow_.resize(static_cast<std::size_t>(G.order()) * 64);
    for (Element x = 0; x < G.order(); ++x) {
        Element p = G.identity();
        for (int k = 0; k < 64; ++k) {
            pow_[x * 64 + k] = p;
            p = G.mul(p, x);
        }
    }
}

std::vector<Element> GhostContext::twisted_cochain(const GhostElement& a) const {
    if (static_cast<int>(a.k.size()) != edge_count()) throw std::invalid_argument("ghost element has the wrong length");
    std::vector<Element> b(contr_.index.size());
    for (std::size_t oe = 0; oe < b.size(); ++oe) {
        int e = up_edge_base_[oe];
        int k = ((a.k[e] % contr_.r[e]) + contr_.r[e]) % contr_.r[e];
        b[oe] = pow_[contr_.index[oe] * 64 + k];
    }
    return b;
}

LiftResult GhostContext::lifts(const GhostElement& a) const {
    std::vector<Element> b = twisted_cochain(a);
    validate_cochain(contr_.action, Cochain1{b});
    ImageResult img = image_.solve(b);
    LiftResult res;
    res.lifts = img.in_image;
    res.failing_circuit = std::move(img.failing_circuit);
    res.equivariance_obstruction = img.failure == ImageFailure::equivariance;
    return res;
}

bool GhostContext::lifts_fast(const int* k) const {
    Element b[1024];
    std::vector<Element> big;
    Element* bp = b;
    if (contr_.index.size() > 1024) {
        big.resize(contr_.index.size());
        bp = big.data();
    }
    for (std::size_t oe = 0; oe < contr_.index.size(); ++oe)
        bp[oe] = pow_[contr_.index[oe] * 64 + k[up_edge_base_[oe]]];
    return image_.contains(bp);
}

LiftResult lifts(const GhostElement& a, const CoverGraph& cover) {
    GhostContext ctx(cover);
    return ctx.lifts(a);
}

LiftedGhostGroup lifted_ghost_group(const GhostContext& ctx, std::uint64_t cap) {
    GhostGroup grp = ghost_group(ctx.r(), cap);
    LiftedGhostGroup out;
    out.r = ctx.r();
    const int ne = ctx.edge_count();
    std::vector<int> k(ne, 0);
    std::vector<std::uint64_t> idx;
    std::vector<bool> member(grp.size(), false);
    for (std::uint64_t i = 0; i < grp.size(); ++i) {
        if (ctx.lifts_fast(k.data())) {
            out.elements.push_back(GhostElement{k});
            idx.push_back(i);
            member[i] = true;
        }
        for (int e = ne - 1; e >= 0; --e) {
            if (++k[e] < out.r[e]) break;
            k[e] = 0;
        }
    }
    // closure: grow the span one cyclic factor at a time and stay inside the set
    std::vector<std::uint64_t> span{0};
    std::vector<bool> in_span(grp.size(), false);
    in_span[0] = true;
    bool closed = !idx.empty() && idx.front() == 0;
    for (std::size_t s = 0; s < idx.size() && closed; ++s) {
        if (in_span[idx[s]]) continue;
        GhostElement g = out.elements[s];
        std::vector<std::uint64_t> grown;
        for (std::uint64_t t : span) {
            GhostElement cur = grp.at(t);
            while (true) {
                cur = grp.add(cur, g);
                std::uint64_t ci = grp.index_of(cur);
                if (in_span[ci]) break;
                if (!member[ci]) {
                    closed = false;
                    break;
                }
                in_span[ci] = true;
                grown.push_back(ci);
            }
            if (!closed) break;
        }
        span.insert(span.end(), grown.begin(), grown.end());
    }
    out.closed = closed && span.size() == idx.size();
    return out;
}

std::vector<int> QrSubgroup::rescaled_moduli() const {
    std::vector<int> m;
    for (std::size_t e = 0; e < r.size(); ++e) m.push_back(r[e] / factor_order[e]);
    return m;
}

QrSubgroup qr_subgroup(const LiftedGhostGroup& lifted, const std::vector<bool>& separating) {
    QrSubgroup q;
    q.r = lifted.r;
    const int ne = static_cast<int>(lifted.r.size());
    std::vector<int> g(ne, 0);
    for (int e = 0; e < ne; ++e) g[e] = lifted.r[e];
    for (const auto& a : lifted.elements) {
        if (a.support_size() != 1) continue;
        int e = static_cast<int>(std::find_if(a.k.begin(), a.k.end(), [](int x) { return x != 0; }) - a.k.begin());
        g[e] = std::gcd(g[e], a.k[e]);
    }
    for (int e = 0; e < ne; ++e) {
        int order = lifted.r[e] / g[e];
        q.factor_order.push_back(order);
        q.order *= static_cast<std::uint64_t>(order);
        if (order > 1) {
            GhostElement gen;
            gen.k.assign(ne, 0);
            gen.k[e] = g[e];
            q.generators.push_back(std::move(gen));
        }
        if (separating[e] && order != lifted.r[e]) q.separating_full = false;
        if (!separating[e] && order != 1) q.only_separating = false;
    }
    return q;
}

AgeValue age(const GhostElement& a, const std::vector<int>& r, const std::vector<bool>& separating,
             bool non_separating_only) {
    AgeValue s(0);
    for (std::size_t e = 0; e < r.size(); ++e) {
        if (non_separating_only && separating[e]) continue;
        int k = ((a.k[e] % r[e]) + r[e]) % r[e];
        s += AgeValue(k, r[e]);
    }
    return s;
}

AgeValue rescaled_age(const GhostElement& a, const std::vector<int>& moduli) {
    AgeValue s(0);
    for (std::size_t e = 0; e < moduli.size(); ++e) {
        int m = moduli[e];
        int k = ((a.k[e] % m) + m) % m;
        s += AgeValue(k, m);
    }
    return s;
}

JuniorVerdict junior_verdict(const LiftedGhostGroup& lifted, const std::vector<bool>& separating) {
    JuniorVerdict v;
    QrSubgroup qr = qr_subgroup(lifted, separating);
    const int ne = static_cast<int>(lifted.r.size());
    std::vector<int> mod = qr.rescaled_moduli();
    v.lifted_order = lifted.elements.size();
    v.qr_order = qr.order;
    v.lifted_closed = lifted.closed;
    v.separating_model_holds = qr.separating_full && qr.only_separating;

    std::map<GhostElement, GhostElement> classes;
    std::set<GhostElement> sep_classes;
    for (const auto& a : lifted.elements) {
        GhostElement c, s;
        for (int e = 0; e < ne; ++e) {
            c.k.push_back(a.k[e] % mod[e]);
            s.k.push_back(separating[e] ? 0 : a.k[e]);
        }
        if (!c.is_zero()) classes.emplace(std::move(c), a);
        if (!s.is_zero()) sep_classes.insert(std::move(s));
    }
    for (const auto& [c, rep] : classes) {
        QuotientClass qc{c, rescaled_age(c, mod), rep};
        if (c.support_size() == 1) v.qr_free_check = false;
        if (qc.age > 0 && qc.age < 1) {
            v.is_junior = true;
            if (!v.witness || qc.age < v.witness->age) v.witness = qc;
        }
        v.classes.push_back(std::move(qc));
    }
    for (const auto& s : sep_classes) {
        AgeValue a = age(s, lifted.r, separating, true);
        if (a > 0 && a < 1) v.separating_model_junior = true;
    }
    return v;
}

JuniorVerdict junior_verdict(const CoverGraph& cover, std::uint64_t cap) {
    GhostContext ctx(cover);
    return junior_verdict(lifted_ghost_group(ctx, cap), ctx.separating());
}

AgeValue cycle_age_bound(int m, int n_prime, int u) {
    if (m < 1 || n_prime < 1 || n_prime % m != 0 || u < 0 || u >= n_prime / m)
        throw DomainError("cycle_age_bound: need m >= 1, m | n', 0 <= u < n'/m");
    AgeValue s(0);
    for (int t = 0; t < m; ++t) s += AgeValue(t * (n_prime / m) + u, n_prime);
    return s;
}

}  // namespace ghostaut
