#include "ghostaut/group.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <unordered_map>

#include "ghostaut/errors.hpp"

namespace ghostaut {

namespace {

std::string cycle_string(const std::vector<int>& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += ' ';
            out += std::to_string(j);
            first = false;
            j = static_cast<std::size_t>(p[j]);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

FiniteGroup quaternion_group() {
    // element 2*u + s: unit u in {1,i,j,k}, sign s (1 = negative)
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, ub = b / 2;
            int s = (a % 2) ^ (b % 2) ^ unit_sign[ua][ub];
            t[a][b] = 2 * unit_mul[ua][ub] + s;
        }
    }
    return FiniteGroup::from_table("Q8", t);
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n < 1 || n > kMaxGroupOrder) throw NotAGroup("order must be between 1 and 64");
    FiniteGroup g;
    g.name_ = std::move(name);
    g.n_ = n;
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n) throw NotAGroup("table is not square");
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n) throw NotAGroup("table entry out of range");
            g.table_[a * n + b] = v;
        }
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) ok = g.mul(a, b) == b && g.mul(b, a) == b;
        if (ok) e = a;
    }
    if (e < 0) throw NotAGroup("no identity element");
    g.e_ = e;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw NotAGroup("multiplication is not associative at (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");
    g.inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.mul(a, b) == e && g.mul(b, a) == e) {
                g.inv_[a] = b;
                break;
            }
        }
        if (g.inv_[a] < 0) throw NotAGroup("element " + std::to_string(a) + " has no inverse");
    }
    g.finish();
    return g;
}

FiniteGroup FiniteGroup::from_permutations(std::string name, const std::vector<std::vector<int>>& generators) {
    if (generators.empty()) throw NotAGroup("no generators");
    const std::size_t deg = generators.front().size();
    for (const auto& p : generators) {
        if (p.size() != deg) throw NotAGroup("generators act on different sets");
        std::vector<int> s = p;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < deg; ++i)
            if (s[i] != static_cast<int>(i)) throw NotAGroup("generator is not a permutation");
    }
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> seen;
    std::vector<std::vector<int>> elems{id};
    seen[id] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : generators) {
            std::vector<int> q(deg);
            for (std::size_t k = 0; k < deg; ++k) q[k] = elems[i][s[k]];
            if (!seen.count(q)) {
                if (elems.size() >= static_cast<std::size_t>(kMaxGroupOrder))
                    throw NotAGroup("generated group exceeds order 64");
                seen[q] = 0;
                elems.push_back(q);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    int idx = 0;
    for (const auto& p : elems) seen[p] = idx++;
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<int> q(deg);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (std::size_t k = 0; k < deg; ++k) q[k] = elems[a][elems[b][k]];
            t[a][b] = seen.at(q);
        }
    }
    FiniteGroup g = from_table(std::move(name), t);
    g.perms_ = elems;
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1 || n > kMaxGroupOrder) throw NotAGroup("order must be between 1 and 64");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_table("C" + std::to_string(n), t);
}

FiniteGroup FiniteGroup::builtin(std::string_view name) {
    if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'Z')) {
        int n = 0;
        for (char ch : name.substr(1)) {
            if (ch < '0' || ch > '9') throw NotAGroup("unknown group " + std::string(name));
            n = n * 10 + (ch - '0');
            if (n > kMaxGroupOrder) throw NotAGroup("order must be between 1 and 64");
        }
        return cyclic(n);
    }
    if (name == "S3") return from_permutations("S3", {{1, 0, 2}, {1, 2, 0}});
    if (name == "S4") return from_permutations("S4", {{1, 0, 2, 3}, {1, 2, 3, 0}});
    if (name == "D4") return from_permutations("D4", {{1, 2, 3, 0}, {0, 3, 2, 1}});
    if (name == "Q8") return quaternion_group();
    throw NotAGroup("unknown group " + std::string(name));
}

std::vector<std::string> FiniteGroup::builtin_names() {
    return {"C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "S4", "D4", "Q8"};
}

Element FiniteGroup::power(Element a, long long k) const {
    const long long m = elt_order_[a];
    k %= m;
    if (k < 0) k += m;
    Element r = e_;
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

std::string FiniteGroup::label(Element a) const {
    if (!perms_.empty()) return cycle_string(perms_[a]);
    if (name_ == "Q8") {
        static const char* q[] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
        return q[a];
    }
    return std::to_string(a);
}

void FiniteGroup::finish() {
    const int n = n_;
    elt_order_.assign(n, 1);
    for (int a = 0; a < n; ++a) {
        Element x = a;
        int k = 1;
        while (x != e_) {
            x = mul(x, a);
            ++k;
        }
        elt_order_[a] = k;
    }
    abelian_ = true;
    for (int a = 0; a < n && abelian_; ++a)
        for (int b = 0; b < n; ++b)
            if (mul(a, b) != mul(b, a)) {
                abelian_ = false;
                break;
            }
    class_of_.assign(n, -1);
    classes_.clear();
    for (int x = 0; x < n; ++x) {
        if (class_of_[x] >= 0) continue;
        std::vector<Element> cls;
        for (int g = 0; g < n; ++g) cls.push_back(conjugate(g, x));
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        for (Element y : cls) class_of_[y] = static_cast<int>(classes_.size());
        classes_.push_back(std::move(cls));
    }
}

int Subgroup::order() const { return std::popcount(mask_); }

std::vector<Element> Subgroup::elements() const {
    std::vector<Element> out;
    for (ElementMask m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

bool lex_less(const Subgroup& a, const Subgroup& b) {
    auto ea = a.elements(), eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

ElementMask closure(const FiniteGroup& g, ElementMask generators) {
    std::array<Element, kMaxGroupOrder> gens{};
    int ng = 0;
    for (ElementMask m = generators; m; m &= m - 1) gens[ng++] = std::countr_zero(m);
    std::array<Element, kMaxGroupOrder> elems{};
    int ne = 0;
    ElementMask have = ElementMask{1} << g.identity();
    elems[ne++] = g.identity();
    for (int i = 0; i < ne; ++i) {
        for (int j = 0; j < ng; ++j) {
            Element y = g.mul(elems[i], gens[j]);
            if (!((have >> y) & 1U)) {
                have |= ElementMask{1} << y;
                elems[ne++] = y;
            }
        }
    }
    return have;
}

Subgroup generate(const FiniteGroup& g, std::span<const Element> generators) {
    ElementMask m = 0;
    for (Element x : generators) m |= ElementMask{1} << x;
    return Subgroup(closure(g, m));
}

bool is_subgroup(const FiniteGroup& g, ElementMask mask) {
    if (!((mask >> g.identity()) & 1U)) return false;
    return closure(g, mask) == mask;
}

Subgroup conjugate(const FiniteGroup& g, Element x, const Subgroup& h) {
    ElementMask m = 0;
    for (Element y : h.elements()) m |= ElementMask{1} << g.conjugate(x, y);
    return Subgroup(m);
}

Subgroup centralizer(const FiniteGroup& g, const Subgroup& h) {
    ElementMask m = 0;
    auto hs = h.elements();
    for (Element x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (Element y : hs)
            if (g.mul(x, y) != g.mul(y, x)) {
                ok = false;
                break;
            }
        if (ok) m |= ElementMask{1} << x;
    }
    return Subgroup(m);
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
    std::vector<ElementMask> cyc;
    for (Element x = 0; x < g.order(); ++x) {
        ElementMask c = closure(g, ElementMask{1} << x);
        if (std::find(cyc.begin(), cyc.end(), c) == cyc.end()) cyc.push_back(c);
    }
    std::unordered_map<ElementMask, int> seen;
    std::vector<ElementMask> subs;
    for (ElementMask c : cyc) {
        if (seen.emplace(c, 0).second) subs.push_back(c);
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (ElementMask c : cyc) {
            if ((c & ~subs[i]) == 0) continue;
            ElementMask j = closure(g, subs[i] | c);
            if (seen.emplace(j, 0).second) subs.push_back(j);
        }
    }
    std::vector<Subgroup> out;
    for (ElementMask m : subs) out.emplace_back(m);
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return lex_less(a, b);
    });
    return out;
}

std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& g) {
    auto subs = all_subgroups(g);
    std::vector<bool> used(subs.size(), false);
    std::vector<SubgroupClass> out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (used[i]) continue;
        SubgroupClass cls;
        for (Element x = 0; x < g.order(); ++x) {
            Subgroup c = conjugate(g, x, subs[i]);
            if (std::find(cls.members.begin(), cls.members.end(), c) == cls.members.end()) cls.members.push_back(c);
        }
        for (std::size_t j = i; j < subs.size(); ++j)
            if (std::find(cls.members.begin(), cls.members.end(), subs[j]) != cls.members.end()) used[j] = true;
        std::sort(cls.members.begin(), cls.members.end(), lex_less);
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return lex_less(a.canonical(), b.canonical());
    });
    return out;
}

int subgroup_class_index(const std::vector<SubgroupClass>& classes, const Subgroup& h) {
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (const auto& m : classes[i].members)
            if (m == h) return static_cast<int>(i);
    return -1;
}

bool subclass_leq(const FiniteGroup& g, const SubgroupClass& a, const SubgroupClass& b) {
    (void)g;
    for (const auto& m : b.members)
        if (a.canonical().is_subset_of(m)) return true;
    return false;
}

SubgroupLattice::SubgroupLattice(const FiniteGroup& g) : g_(&g), subgroups_(all_subgroups(g)) {
    const int n = size();
    for (int i = 0; i < n; ++i)
        if (subgroups_[i].order() == 1) trivial_ = i;
    if (n <= 1024) {
        join_.assign(static_cast<std::size_t>(n) * n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                int j = id_of(closure(g, subgroups_[a].mask() | subgroups_[b].mask()));
                join_[a * n + b] = join_[b * n + a] = j;
            }
    }
    cyclic_.resize(g.order());
    for (Element x = 0; x < g.order(); ++x) cyclic_[x] = id_of(closure(g, ElementMask{1} << x));
}

int SubgroupLattice::id_of(ElementMask mask) const {
    auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), Subgroup(mask),
                               [](const Subgroup& a, const Subgroup& b) {
                                   if (a.order() != b.order()) return a.order() < b.order();
                                   return lex_less(a, b);
                               });
    if (it == subgroups_.end() || it->mask() != mask) return -1;
    return static_cast<int>(it - subgroups_.begin());
}

int SubgroupLattice::join(int a, int b) const {
    if (!join_.empty()) return join_[a * size() + b];
    return id_of(closure(*g_, subgroups_[a].mask() | subgroups_[b].mask()));
}

LocalIndex local_index_from_element(const FiniteGroup& g, Element h) {
    return LocalIndex{h, g.element_order(h)};
}

LocalIndex inverse_index(const FiniteGroup& g, const LocalIndex& li) {
    return LocalIndex{g.inv(li.generator), li.order};
}

Element power_index(const FiniteGroup& g, const LocalIndex& li, long long k) {
    return g.power(li.generator, k);
}

std::vector<int> left_coset_ids(const FiniteGroup& g, const Subgroup& h, std::vector<Element>* reps) {
    std::vector<int> id(g.order(), -1);
    auto hs = h.elements();
    int next = 0;
    for (Element x = 0; x < g.order(); ++x) {
        if (id[x] >= 0) continue;
        for (Element y : hs) id[g.mul(x, y)] = next;
        if (reps) reps->push_back(x);
        ++next;
    }
    return id;
}

EquivariantMaps equivariant_maps(const FiniteGroup& g, const Subgroup& h) {
    EquivariantMaps out;
    auto coset = left_coset_ids(g, h, &out.coset_reps);
    const int m = static_cast<int>(out.coset_reps.size());
    for (Element z = 0; z < g.order(); ++z) {
        std::vector<Element> eta(m, -1);
        bool ok = true;
        for (Element x = 0; x < g.order() && ok; ++x) {
            int c = coset[x];
            Element v = g.conjugate(x, z);
            if (eta[c] < 0)
                eta[c] = v;
            else if (eta[c] != v)
                ok = false;
        }
        if (!ok) continue;
        for (Element x = 0; x < g.order() && ok; ++x)
            for (int j = 0; j < m && ok; ++j)
                ok = eta[coset[g.mul(x, out.coset_reps[j])]] == g.conjugate(x, eta[j]);
        if (ok) out.maps.push_back(std::move(eta));
    }
    return out;
}

}  // namespace ghostaut
