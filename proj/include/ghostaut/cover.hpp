#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ghostaut/cochain.hpp"
#include "ghostaut/graph.hpp"
#include "ghostaut/group.hpp"

namespace ghostaut {

struct DecoratedGraph {
    Graph graph;
    std::vector<int> genus;     // per vertex
    std::vector<int> markings;  // number of marked points per vertex
    std::vector<int> r;         // per unoriented edge

    int special_points(int v) const { return graph.degree(v) + markings[v]; }
    bool stable_at(int v) const { return 2 * genus[v] - 2 + special_points(v) > 0; }
    int total_genus() const;
    int marking_count() const;
    // connected, stable everywhere, total genus >= 2, r >= 1; throws IllFormed
    void validate() const;
};

// Monodromy tuple at vertex v: a_1, b_1, ..., a_g, b_g, then one entry per
// oriented edge with tail v (ascending id), then one per marking.
struct CoverDatum {
    std::shared_ptr<const FiniteGroup> group;
    DecoratedGraph base;
    std::vector<std::vector<Element>> monodromy;  // per vertex
    std::vector<Element> voltages;                // per oriented edge, g(mate e) = g(e)^-1

    Element edge_index(int oriented_edge) const;
    Element marking_index(int v, int j) const;
    Subgroup vertex_subgroup(int v) const;
    // surface relation, index orders, branch matching c(mate e) = g^-1 c(e)^-1 g; throws IllFormed
    void validate() const;
};

struct CoverGraph {
    DecoratedGraph base;
    GraphGroupAction action;
    std::vector<Subgroup> vertex_subgroups;  // H_v per base vertex
    std::vector<int> vertex_proj;            // upstairs vertex -> base vertex
    std::vector<Element> vertex_rep;         // x with vertex = x H_v, x minimal in the coset
    std::vector<int> edge_proj;              // upstairs oriented edge -> base oriented edge
    std::vector<Element> edge_rep;           // x for the lift x<c(e)> of e = edge_proj (even ids)
    std::vector<Element> index;              // b_F per upstairs oriented edge

    const FiniteGroup& group() const { return action.group(); }
};

CoverGraph build_cover_graph(const CoverDatum& datum);

// Full consistency audit of a built cover: action axioms, b_F a valid 1-cochain,
// edge stabilizers generated by b_F of order r, fiber sizes, quotient = base.
void validate_cover(const CoverGraph& cover);

// The cover restricted to edges with nontrivial index (Gamma~_0 over Gamma_0).
struct CoverContraction {
    GraphGroupAction action;     // on Gamma~_0
    Contraction upstairs;        // Gamma~ -> Gamma~_0
    Contraction base;            // Gamma -> Gamma_0
    std::vector<int> r;          // per Gamma_0 edge
    std::vector<Element> index;  // b_F per Gamma~_0 oriented edge
    std::vector<int> edge_proj;  // Gamma~_0 oriented edge -> Gamma_0 oriented edge
    std::vector<int> vertex_proj;
};

CoverContraction contract_trivial(const CoverGraph& cover);

// conjugacy class of b_F over each base oriented edge; throws IllFormed if lifts disagree
std::vector<int> type_function(const CoverGraph& cover);

// For every genus up to a bound and every value P, the distinct subgroups
// <a_1, b_1, ..., a_g, b_g> with prod [a_i, b_i] = P, each with one witness.
class MonodromyTable {
public:
    struct Entry {
        int subgroup;  // id in the lattice
        std::vector<Element> witness;
    };

    MonodromyTable(std::shared_ptr<const FiniteGroup> group, int max_genus);

    const FiniteGroup& group() const { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }
    const SubgroupLattice& lattice() const { return lattice_; }
    int max_genus() const { return static_cast<int>(by_value_.size()) - 1; }
    const std::vector<Entry>& entries(int genus, Element commutator_product) const {
        return by_value_[genus][commutator_product];
    }

private:
    std::shared_ptr<const FiniteGroup> group_;
    SubgroupLattice lattice_;
    std::vector<std::vector<std::vector<Entry>>> by_value_;
};

struct HurwitzResult {
    bool realizable = false;
    std::vector<Element> tuple;  // a_1, b_1, ..., c_1, ..., c_k
};

// Is there a tuple with prod [a_i,b_i] prod c_j = 1, c_j in the given classes,
// generating a subgroup in the class `image` (any subgroup if absent)?
// BudgetExceeded if the search over class tuples exceeds the cap.
HurwitzResult hurwitz_realizable(const MonodromyTable& table, int genus, const std::vector<int>& classes,
                                 std::optional<int> image_class = std::nullopt,
                                 std::uint64_t budget = 10'000'000);

// Abelian group, exactly two markings: the marking indices are mutually inverse.
bool abelian_two_point_check(const CoverDatum& datum);

}  // namespace ghostaut
