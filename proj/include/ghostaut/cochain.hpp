#pragma once

#include <vector>

#include "ghostaut/graph.hpp"

namespace ghostaut {

// a(g.v) = g a(v) g^-1
struct Cochain0 {
    std::vector<Element> values;  // per vertex
};

// b(mate e) = b(e)^-1, b(g.e) = g b(e) g^-1
struct Cochain1 {
    std::vector<Element> values;  // per oriented edge
};

// throw std::invalid_argument on violation
void validate_cochain(const GraphGroupAction& action, const Cochain0& a);
void validate_cochain(const GraphGroupAction& action, const Cochain1& b);

// (da)(e) = a(head e) a(tail e)^-1
Cochain1 delta(const GraphGroupAction& action, const Cochain0& a);

// Holonomy of a closed walk e_1..e_k: b(e_k) ... b(e_1).
// A cochain is in im(delta) iff every circuit has trivial holonomy (and the
// equivariance constraint on each component orbit is solvable).
Element circuit_product(const FiniteGroup& g, const std::vector<Element>& b, const std::vector<int>& circuit);

enum class ImageFailure { none, circuit, equivariance };

struct ImageResult {
    bool in_image = false;
    ImageFailure failure = ImageFailure::none;
    Cochain0 witness;                  // filled when in_image
    std::vector<int> failing_circuit;  // filled on circuit failure
};

// Precomputed forest and component-orbit data for repeated membership tests.
class DeltaImage {
public:
    explicit DeltaImage(const GraphGroupAction& action);

    // b indexed by oriented edge; assumed equivariant and antisymmetric
    bool contains(const Element* b) const;
    ImageResult solve(const std::vector<Element>& b) const;

    const SpanningForest& forest() const { return forest_; }

private:
    struct OrbitRep {
        int root;
        std::vector<std::pair<Element, int>> stabilizer;  // (x, x.root) for x keeping the component
    };

    bool propagate(const Element* b, Element* a, bool all_components, int* failed_edge) const;
    int equivariant_shift(const Element* a, const OrbitRep& rep) const;

    const GraphGroupAction* action_;
    SpanningForest forest_;
    Components comps_;
    std::vector<int> cotree_;       // oriented cotree edges 2k
    std::vector<bool> rep_comp_;    // component is the representative of its orbit
    std::vector<OrbitRep> reps_;
    std::vector<int> comp_rep_;     // component -> index in reps_
    std::vector<Element> comp_move_; // x with x.(rep component) = component
};

ImageResult in_image_of_delta(const GraphGroupAction& action, const Cochain1& b);

// Membership computed on the full graph and on the graph with the flagged
// edges contracted (b must be trivial there); throws std::logic_error if they differ.
bool image_restriction_check(const GraphGroupAction& action, const Cochain1& b, const std::vector<bool>& contracted);

}  // namespace ghostaut
