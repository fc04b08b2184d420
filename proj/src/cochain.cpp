#include "ghostaut/cochain.hpp"

#include <stdexcept>
#include <string>

namespace ghostaut {

void validate_cochain(const GraphGroupAction& action, const Cochain0& a) {
    const FiniteGroup& g = action.group();
    const int nv = action.graph().vertex_count();
    if (static_cast<int>(a.values.size()) != nv) throw std::invalid_argument("0-cochain has the wrong size");
    for (int v = 0; v < nv; ++v) {
        if (a.values[v] < 0 || a.values[v] >= g.order()) throw std::invalid_argument("0-cochain value out of range");
        for (Element x = 0; x < g.order(); ++x)
            if (a.values[action.act_vertex(x, v)] != g.conjugate(x, a.values[v]))
                throw std::invalid_argument("0-cochain is not equivariant at vertex " + std::to_string(v));
    }
}

void validate_cochain(const GraphGroupAction& action, const Cochain1& b) {
    const FiniteGroup& g = action.group();
    const int ne = action.graph().oriented_count();
    if (static_cast<int>(b.values.size()) != ne) throw std::invalid_argument("1-cochain has the wrong size");
    for (int oe = 0; oe < ne; ++oe) {
        if (b.values[oe] < 0 || b.values[oe] >= g.order()) throw std::invalid_argument("1-cochain value out of range");
        if (b.values[Graph::mate(oe)] != g.inv(b.values[oe]))
            throw std::invalid_argument("1-cochain is not antisymmetric at edge " + std::to_string(oe));
        for (Element x = 0; x < g.order(); ++x)
            if (b.values[action.act_edge(x, oe)] != g.conjugate(x, b.values[oe]))
                throw std::invalid_argument("1-cochain is not equivariant at edge " + std::to_string(oe));
    }
}

Cochain1 delta(const GraphGroupAction& action, const Cochain0& a) {
    const FiniteGroup& g = action.group();
    const Graph& gr = action.graph();
    Cochain1 b;
    b.values.resize(gr.oriented_count());
    for (int oe = 0; oe < gr.oriented_count(); ++oe)
        b.values[oe] = g.mul(a.values[gr.head(oe)], g.inv(a.values[gr.tail(oe)]));
    return b;
}

Element circuit_product(const FiniteGroup& g, const std::vector<Element>& b, const std::vector<int>& circuit) {
    Element h = g.identity();
    for (int oe : circuit) h = g.mul(b[oe], h);
    return h;
}

DeltaImage::DeltaImage(const GraphGroupAction& action)
    : action_(&action), forest_(spanning_forest(action.graph())), comps_(components(action.graph())) {
    const Graph& gr = action.graph();
    const FiniteGroup& g = action.group();
    for (int e = 0; e < gr.edge_count(); ++e)
        if (!forest_.in_forest[e]) cotree_.push_back(2 * e);

    std::vector<int> comp_root(comps_.count, -1);
    for (int v = 0; v < gr.vertex_count(); ++v)
        if (comp_root[comps_.of_vertex[v]] < 0) comp_root[comps_.of_vertex[v]] = v;
    comp_rep_.assign(comps_.count, -1);
    comp_move_.assign(comps_.count, g.identity());
    rep_comp_.assign(comps_.count, false);
    for (int c = 0; c < comps_.count; ++c) {
        if (comp_rep_[c] >= 0) continue;
        OrbitRep rep;
        rep.root = comp_root[c];
        int id = static_cast<int>(reps_.size());
        rep_comp_[c] = true;
        for (Element x = 0; x < g.order(); ++x) {
            int w = action.act_vertex(x, rep.root);
            int cw = comps_.of_vertex[w];
            if (cw == c) rep.stabilizer.emplace_back(x, w);
            if (comp_rep_[cw] < 0) {
                comp_rep_[cw] = id;
                comp_move_[cw] = x;
            }
        }
        reps_.push_back(std::move(rep));
    }
}

bool DeltaImage::propagate(const Element* b, Element* a, bool all_components, int* failed_edge) const {
    const Graph& gr = action_->graph();
    const FiniteGroup& g = action_->group();
    for (int v : forest_.order) {
        int pe = forest_.parent_edge[v];
        a[v] = pe < 0 ? g.identity() : g.mul(b[pe], a[gr.tail(pe)]);
    }
    for (int oe : cotree_) {
        int t = gr.tail(oe);
        if (!all_components && !rep_comp_[comps_.of_vertex[t]]) continue;
        if (g.mul(b[oe], a[t]) != a[gr.head(oe)]) {
            if (failed_edge) *failed_edge = oe;
            return false;
        }
    }
    return true;
}

// smallest c with a(x.root) c = x c x^-1 for all x stabilizing the component
int DeltaImage::equivariant_shift(const Element* a, const OrbitRep& rep) const {
    const FiniteGroup& g = action_->group();
    for (int pass = 0; pass < g.order(); ++pass) {
        Element c = pass == 0 ? g.identity() : (pass <= g.identity() ? pass - 1 : pass);
        bool ok = true;
        for (auto [x, w] : rep.stabilizer)
            if (g.mul(a[w], c) != g.conjugate(x, c)) {
                ok = false;
                break;
            }
        if (ok) return c;
    }
    return -1;
}

bool DeltaImage::contains(const Element* b) const {
    Element a[512];
    std::vector<Element> big;
    Element* ap = a;
    if (action_->graph().vertex_count() > 512) {
        big.resize(action_->graph().vertex_count());
        ap = big.data();
    }
    if (!propagate(b, ap, false, nullptr)) return false;
    for (const auto& rep : reps_)
        if (equivariant_shift(ap, rep) < 0) return false;
    return true;
}

ImageResult DeltaImage::solve(const std::vector<Element>& b) const {
    const Graph& gr = action_->graph();
    const FiniteGroup& g = action_->group();
    ImageResult res;
    std::vector<Element> a(gr.vertex_count());
    int failed = -1;
    if (!propagate(b.data(), a.data(), true, &failed)) {
        res.failure = ImageFailure::circuit;
        res.failing_circuit = fundamental_cycle(gr, forest_, failed);
        if (circuit_product(g, b, res.failing_circuit) == g.identity())
            throw std::logic_error("reported circuit has trivial holonomy");
        return res;
    }
    std::vector<Element> shift(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        int c = equivariant_shift(a.data(), reps_[i]);
        if (c < 0) {
            res.failure = ImageFailure::equivariance;
            return res;
        }
        shift[i] = c;
    }
    // rebuild: a = a0 c on representative components, transported to the rest of each orbit
    std::vector<Element> out(gr.vertex_count(), -1);
    for (int v = 0; v < gr.vertex_count(); ++v) {
        int c = comps_.of_vertex[v];
        if (rep_comp_[c]) out[v] = g.mul(a[v], shift[comp_rep_[c]]);
    }
    for (int v = 0; v < gr.vertex_count(); ++v) {
        int c = comps_.of_vertex[v];
        if (!rep_comp_[c]) continue;
        for (Element x = 0; x < g.order(); ++x) {
            int w = action_->act_vertex(x, v);
            if (out[w] < 0) out[w] = g.conjugate(x, out[v]);
        }
    }
    res.witness.values = std::move(out);
    Cochain1 check = delta(*action_, res.witness);
    if (check.values != b) throw std::logic_error("propagated witness does not satisfy delta a = b");
    res.in_image = true;
    return res;
}

ImageResult in_image_of_delta(const GraphGroupAction& action, const Cochain1& b) {
    validate_cochain(action, b);
    DeltaImage img(action);
    ImageResult r = img.solve(b.values);
    if (r.in_image) validate_cochain(action, r.witness);
    return r;
}

bool image_restriction_check(const GraphGroupAction& action, const Cochain1& b, const std::vector<bool>& contracted) {
    const FiniteGroup& g = action.group();
    for (int e = 0; e < action.graph().edge_count(); ++e)
        if (contracted[e] && b.values[2 * e] != g.identity())
            throw std::invalid_argument("cochain is not trivial on a contracted edge");
    bool full = in_image_of_delta(action, b).in_image;
    ActionContraction c = contract(action, contracted);
    Cochain1 rb;
    for (int oe = 0; oe < c.action.graph().oriented_count(); ++oe)
        rb.values.push_back(b.values[2 * c.maps.edge_origin[Graph::edge_of(oe)] + (oe & 1)]);
    bool restricted = in_image_of_delta(c.action, rb).in_image;
    if (full != restricted) throw std::logic_error("membership differs after contracting trivial edges");
    return full;
}

}  // namespace ghostaut
