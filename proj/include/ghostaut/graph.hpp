#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "ghostaut/group.hpp"

namespace ghostaut {

// Undirected multigraph with loops. Unoriented edge k has oriented halves
// 2k (tail = ends[k].first, head = ends[k].second) and its mate 2k+1.
class Graph {
public:
    Graph() = default;
    Graph(int vertex_count, std::vector<std::pair<int, int>> ends);

    int vertex_count() const { return v_; }
    int edge_count() const { return static_cast<int>(ends_.size()); }
    int oriented_count() const { return 2 * edge_count(); }

    static int mate(int oe) { return oe ^ 1; }
    static int edge_of(int oe) { return oe >> 1; }
    int tail(int oe) const { return (oe & 1) ? ends_[oe >> 1].second : ends_[oe >> 1].first; }
    int head(int oe) const { return (oe & 1) ? ends_[oe >> 1].first : ends_[oe >> 1].second; }
    bool is_loop(int e) const { return ends_[e].first == ends_[e].second; }

    const std::vector<std::pair<int, int>>& ends() const { return ends_; }
    // oriented edges with the given tail, ascending
    const std::vector<int>& out_edges(int v) const { return out_[v]; }
    int degree(int v) const { return static_cast<int>(out_[v].size()); }

    friend bool operator==(const Graph& a, const Graph& b) { return a.v_ == b.v_ && a.ends_ == b.ends_; }

private:
    int v_ = 0;
    std::vector<std::pair<int, int>> ends_;
    std::vector<std::vector<int>> out_;
};

struct Components {
    int count = 0;
    std::vector<int> of_vertex;  // numbered by lowest vertex
};

Components components(const Graph& g);
int betti_number(const Graph& g);
// per unoriented edge: removing it increases the number of components
std::vector<bool> separating_edges(const Graph& g);
bool is_tree_like(const Graph& g);

struct SpanningForest {
    std::vector<bool> in_forest;   // per unoriented edge
    std::vector<int> parent_edge;  // per vertex: oriented forest edge with head = vertex, -1 at roots
    std::vector<int> root;         // per vertex
    std::vector<int> depth;
    std::vector<int> order;        // roots first within each component, parents before children
};

// Kruskal in edge-id order; roots are the lowest vertex of each component.
SpanningForest spanning_forest(const Graph& g);

// Cotree edge e followed by the forest path from head(e) back to tail(e).
std::vector<int> fundamental_cycle(const Graph& g, const SpanningForest& f, int oriented_edge);

struct Contraction {
    Graph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> edge_map;    // old edge -> new edge, -1 if contracted
    std::vector<int> edge_origin; // new edge -> old edge
};

// contract every edge with flag set; surviving edges keep their order and orientation
Contraction contract(const Graph& g, const std::vector<bool>& contracted);

// Canonical code of a labelled graph under vertex relabelling; equal codes iff isomorphic.
std::vector<int> canonical_form(const Graph& g, const std::vector<int>& vertex_labels = {},
                                const std::vector<int>& edge_labels = {});

// Plain isomorphism test, used for small graphs only.
bool isomorphic(const Graph& a, const Graph& b);

class GraphGroupAction {
public:
    GraphGroupAction() = default;
    GraphGroupAction(std::shared_ptr<const FiniteGroup> group, Graph graph, std::vector<int> vertex_perm,
                     std::vector<int> edge_perm);

    const FiniteGroup& group() const { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }
    const Graph& graph() const { return graph_; }
    int act_vertex(Element g, int v) const { return vperm_[g * graph_.vertex_count() + v]; }
    int act_edge(Element g, int oe) const { return eperm_[g * graph_.oriented_count() + oe]; }

    // homomorphism, incidence compatibility, mate compatibility; throws std::invalid_argument
    void validate() const;

private:
    std::shared_ptr<const FiniteGroup> group_;
    Graph graph_;
    std::vector<int> vperm_;
    std::vector<int> eperm_;
};

struct Quotient {
    Graph graph;
    std::vector<int> vertex_map;  // vertex -> orbit vertex
    std::vector<int> edge_map;    // oriented edge -> oriented quotient edge
};

Quotient quotient_graph(const GraphGroupAction& action);

struct ActionContraction {
    GraphGroupAction action;
    Contraction maps;
};

// D must be a union of orbits, otherwise UnstableSet
ActionContraction contract(const GraphGroupAction& action, const std::vector<bool>& contracted);

}  // namespace ghostaut
