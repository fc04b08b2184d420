#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ghostaut/cover.hpp"
#include "ghostaut/ghost.hpp"

namespace ghostaut {

struct ScanBounds {
    std::string group = "S3";
    int max_vertices = 1;
    int max_edges = 1;
    int max_genus_per_vertex = 1;
    int min_total_genus = 2;
    int max_total_genus = 1000;
    std::vector<int> allowed_r;  // empty: every element order >= 2
    int markings = 0;            // total marked points, distributed over vertices
    std::uint64_t cover_budget = 50'000'000;  // (index, voltage) combinations per base
    std::uint64_t ghost_budget = 10'000'000;
    int jobs = 1;
    std::uint64_t stop_after_witnesses = 0;  // 0: exhaustive
    bool conjugacy_reduction = true;

    void validate() const;  // throws DomainError
};

std::vector<DecoratedGraph> enumerate_bases(const ScanBounds& bounds, const FiniteGroup& group);
std::vector<int> base_canonical_form(const DecoratedGraph& base);

// Number of (index, voltage, marking) combinations enumerate_covers will visit.
std::uint64_t cover_space_size(const DecoratedGraph& base, const FiniteGroup& group, bool conjugacy_reduction);

// Tree voltages fixed to the identity, the first edge index fixed to a class
// representative when conjugacy_reduction is set; one datum per distinct
// vertex subgroup choice. BudgetExceeded if the space exceeds the budget.
void enumerate_covers(const DecoratedGraph& base, const MonodromyTable& table, bool conjugacy_reduction,
                      std::uint64_t budget, const std::function<void(const CoverDatum&)>& visit);

// Data the verdict depends on: vertex subgroups, indices c(e), cosets g_e H_head.
std::vector<int> cover_signature(const CoverDatum& datum, const SubgroupLattice& lattice);

struct Witness {
    int base_id = -1;
    CoverDatum datum;
    JuniorVerdict verdict;
    GhostElement lifted_representative;
    bool revalidated = false;
};

struct BaseReport {
    int base_id = -1;
    DecoratedGraph base;
    std::vector<int> canonical;
    std::uint64_t covers = 0;
    std::uint64_t distinct = 0;
    std::uint64_t juniors = 0;
    std::uint64_t separating_model_violations = 0;
    std::uint64_t separating_model_juniors = 0;
    std::uint64_t non_closed = 0;
    std::uint64_t qr_free_failures = 0;
    bool skipped = false;
    std::uint64_t skipped_space = 0;
    std::map<std::uint64_t, std::uint64_t> lifted_histogram;  // over instances
};

struct ScanSummary {
    std::uint64_t bases = 0;
    std::uint64_t instances = 0;
    std::uint64_t distinct = 0;
    std::uint64_t juniors = 0;
    std::uint64_t skipped_bases = 0;
    std::uint64_t separating_model_violations = 0;
    std::uint64_t separating_model_juniors = 0;
    std::uint64_t non_closed = 0;
    std::uint64_t qr_free_failures = 0;
    bool stopped_early = false;
    std::map<std::uint64_t, std::uint64_t> lifted_histogram;
    // "clean", "witnesses" or "incomplete"
    std::string status() const;
};

struct ScanResult {
    ScanBounds bounds;
    std::vector<BaseReport> bases;
    std::vector<Witness> witnesses;
    ScanSummary summary;
};

// Rebuilds the cover from the datum and checks lifts and the age bound of the witness.
bool revalidate_witness(const Witness& w);

// group looked up by name among the built-ins
ScanResult scan_j_locus(const ScanBounds& bounds);
ScanResult scan_j_locus(const ScanBounds& bounds, std::shared_ptr<const FiniteGroup> group);

}  // namespace ghostaut
