#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghostaut {

using Element = int;
using ElementMask = std::uint64_t;

inline constexpr int kMaxGroupOrder = 64;

// Finite group stored as a Cayley table. mul(a, b) = table[a][b].
class FiniteGroup {
public:
    static FiniteGroup from_table(std::string name, const std::vector<std::vector<int>>& table);
    // 0-based image lists; product is composition, (p*q)(i) = p(q(i)).
    static FiniteGroup from_permutations(std::string name, const std::vector<std::vector<int>>& generators);
    static FiniteGroup cyclic(int n);
    static FiniteGroup builtin(std::string_view name);
    static std::vector<std::string> builtin_names();

    const std::string& name() const { return name_; }
    int order() const { return n_; }
    Element identity() const { return e_; }

    Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
    Element inv(Element a) const { return inv_[a]; }
    Element power(Element a, long long k) const;
    // g x g^-1
    Element conjugate(Element g, Element x) const { return mul(mul(g, x), inv_[g]); }
    // a b a^-1 b^-1
    Element commutator(Element a, Element b) const { return mul(mul(a, b), mul(inv_[a], inv_[b])); }
    int element_order(Element a) const { return elt_order_[a]; }
    bool is_abelian() const { return abelian_; }

    int class_count() const { return static_cast<int>(classes_.size()); }
    int class_of(Element a) const { return class_of_[a]; }
    const std::vector<Element>& class_members(int c) const { return classes_[c]; }
    Element class_representative(int c) const { return classes_[c].front(); }

    const std::vector<std::vector<int>>& permutations() const { return perms_; }
    std::string label(Element a) const;

private:
    FiniteGroup() = default;
    void finish();

    std::string name_;
    int n_ = 0;
    Element e_ = 0;
    std::vector<Element> table_;
    std::vector<Element> inv_;
    std::vector<int> elt_order_;
    std::vector<int> class_of_;
    std::vector<std::vector<Element>> classes_;
    std::vector<std::vector<int>> perms_;
    bool abelian_ = true;
};

class Subgroup {
public:
    Subgroup() = default;
    explicit Subgroup(ElementMask mask) : mask_(mask) {}

    ElementMask mask() const { return mask_; }
    bool contains(Element a) const { return (mask_ >> a) & 1U; }
    int order() const;
    std::vector<Element> elements() const;
    bool is_subset_of(const Subgroup& o) const { return (mask_ & ~o.mask_) == 0; }

    friend bool operator==(const Subgroup&, const Subgroup&) = default;

private:
    ElementMask mask_ = 0;
};

// lexicographic order on sorted element lists
bool lex_less(const Subgroup& a, const Subgroup& b);

ElementMask closure(const FiniteGroup& g, ElementMask generators);
Subgroup generate(const FiniteGroup& g, std::span<const Element> generators);
bool is_subgroup(const FiniteGroup& g, ElementMask mask);
Subgroup conjugate(const FiniteGroup& g, Element x, const Subgroup& h);
Subgroup centralizer(const FiniteGroup& g, const Subgroup& h);
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

struct SubgroupClass {
    std::vector<Subgroup> members;  // sorted by lex_less; front() is canonical
    const Subgroup& canonical() const { return members.front(); }
    int order() const { return members.front().order(); }
};

// sorted by (order, canonical representative)
std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& g);
int subgroup_class_index(const std::vector<SubgroupClass>& classes, const Subgroup& h);
// some conjugate of a lies inside b
bool subclass_leq(const FiniteGroup& g, const SubgroupClass& a, const SubgroupClass& b);

// All subgroups with a precomputed join table.
class SubgroupLattice {
public:
    explicit SubgroupLattice(const FiniteGroup& g);

    int size() const { return static_cast<int>(subgroups_.size()); }
    const Subgroup& at(int id) const { return subgroups_[id]; }
    int id_of(ElementMask mask) const;
    int join(int a, int b) const;
    int trivial() const { return trivial_; }
    int cyclic(Element x) const { return cyclic_[x]; }

private:
    const FiniteGroup* g_;
    std::vector<Subgroup> subgroups_;
    std::vector<int> join_;
    std::vector<int> cyclic_;
    int trivial_ = 0;
};

// Generator h of a cyclic stabilizer, identified with the character value exp(2 pi i/|h|).
struct LocalIndex {
    Element generator = 0;
    int order = 1;
    friend bool operator==(const LocalIndex&, const LocalIndex&) = default;
};

LocalIndex local_index_from_element(const FiniteGroup& g, Element h);
LocalIndex inverse_index(const FiniteGroup& g, const LocalIndex& li);
// h^k, the element acting by exp(2 pi i k/r) on the branch
Element power_index(const FiniteGroup& g, const LocalIndex& li, long long k);

// G-equivariant maps G/H -> G (G acting on itself by conjugation).
struct EquivariantMaps {
    std::vector<Element> coset_reps;              // minimal element of each left coset xH
    std::vector<std::vector<Element>> maps;       // maps[i][j] = image of coset j
};

EquivariantMaps equivariant_maps(const FiniteGroup& g, const Subgroup& h);

std::vector<int> left_coset_ids(const FiniteGroup& g, const Subgroup& h, std::vector<Element>* reps = nullptr);

}  // namespace ghostaut
