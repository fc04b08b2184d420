#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghostaut/cochain.hpp"
#include "ghostaut/cover.hpp"

namespace ghostaut {

using AgeValue = boost::rational<std::int64_t>;

std::string to_string(const AgeValue& a);
AgeValue parse_age(const std::string& s);

// residues k_e in Z/r(e), one per edge of Gamma_0
struct GhostElement {
    std::vector<int> k;
    bool is_zero() const;
    int support_size() const;
    friend bool operator==(const GhostElement&, const GhostElement&) = default;
    friend auto operator<=>(const GhostElement&, const GhostElement&) = default;
};

// The product group of Z/r(e); element i is the mixed-radix expansion of i
// with the last edge varying fastest.
class GhostGroup {
public:
    GhostGroup(std::vector<int> r, std::uint64_t cap = 10'000'000);

    std::uint64_t size() const { return size_; }
    const std::vector<int>& moduli() const { return r_; }
    GhostElement at(std::uint64_t i) const;
    std::uint64_t index_of(const GhostElement& a) const;
    GhostElement add(const GhostElement& a, const GhostElement& b) const;
    GhostElement negate(const GhostElement& a) const;

private:
    std::vector<int> r_;
    std::uint64_t size_ = 1;
};

GhostGroup ghost_group(const std::vector<int>& r, std::uint64_t cap = 10'000'000);

struct LiftResult {
    bool lifts = false;
    std::vector<int> failing_circuit;  // on Gamma~_0, when the failure is a circuit
    bool equivariance_obstruction = false;
};

// Everything needed to test lifts on one cover.
class GhostContext {
public:
    explicit GhostContext(const CoverGraph& cover);
    GhostContext(const GhostContext&) = delete;
    GhostContext& operator=(const GhostContext&) = delete;

    const CoverContraction& contraction() const { return contr_; }
    const std::vector<int>& r() const { return contr_.r; }
    const std::vector<bool>& separating() const { return sep_; }
    int edge_count() const { return static_cast<int>(contr_.r.size()); }

    // the cochain b_F . a on Gamma~_0
    std::vector<Element> twisted_cochain(const GhostElement& a) const;
    LiftResult lifts(const GhostElement& a) const;
    bool lifts_fast(const int* k) const;

private:
    CoverContraction contr_;
    std::vector<bool> sep_;
    DeltaImage image_;
    std::vector<int> up_edge_base_;  // Gamma~_0 oriented edge -> Gamma_0 edge
    std::vector<Element> pow_;       // pow_[x * 64 + k] = x^k
};

LiftResult lifts(const GhostElement& a, const CoverGraph& cover);

struct LiftedGhostGroup {
    std::vector<int> r;
    std::vector<GhostElement> elements;  // in ghost group order, zero first
    bool closed = false;                 // closure under addition and negation verified
};

LiftedGhostGroup lifted_ghost_group(const GhostContext& ctx, std::uint64_t cap = 10'000'000);

struct QrSubgroup {
    std::vector<int> r;
    std::vector<GhostElement> generators;   // lifted elements supported on one edge
    std::vector<int> factor_order;          // per edge: order of the lifted elements supported there
    std::uint64_t order = 1;
    bool separating_full = true;            // every separating edge carries its full Z/r(e)
    bool only_separating = true;            // no non-separating edge carries a lifted element
    // moduli of the rescaled coordinates, r(e) / factor_order(e)
    std::vector<int> rescaled_moduli() const;
};

QrSubgroup qr_subgroup(const LiftedGhostGroup& lifted, const std::vector<bool>& separating);

AgeValue age(const GhostElement& a, const std::vector<int>& r, const std::vector<bool>& separating,
             bool non_separating_only);
// age of the class of a acting on the coordinates rescaled by the QR subgroup
AgeValue rescaled_age(const GhostElement& a, const std::vector<int>& moduli);

struct QuotientClass {
    GhostElement element;         // reduced residues k_e mod rescaled modulus
    AgeValue age;
    GhostElement representative;  // first lifted element in the class
};

struct JuniorVerdict {
    bool is_junior = false;
    std::optional<QuotientClass> witness;
    bool qr_free_check = true;
    std::uint64_t lifted_order = 0;
    std::uint64_t qr_order = 0;
    bool lifted_closed = true;
    std::vector<QuotientClass> classes;  // nonzero classes of lifted / QR, sorted
    // the separating-edge description of QR and its verdict
    bool separating_model_holds = true;
    bool separating_model_junior = false;
};

JuniorVerdict junior_verdict(const LiftedGhostGroup& lifted, const std::vector<bool>& separating);
JuniorVerdict junior_verdict(const CoverGraph& cover, std::uint64_t cap = 10'000'000);

// Sum over s < m of (s n'/m + u)/n'.
AgeValue cycle_age_bound(int m, int n_prime, int u);

}  // namespace ghostaut
