#include "ghostaut/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ghostaut/errors.hpp"

namespace ghostaut {

namespace {

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

// {"3": x} or [x, ...] into a vector of the given size
std::vector<int> keyed_list(const json& j, int size, int fill, const char* what) {
    std::vector<int> out(size, fill);
    if (j.is_array()) {
        if (static_cast<int>(j.size()) != size) throw ParseError(std::string(what) + " has the wrong length");
        for (int i = 0; i < size; ++i) out[i] = as_int(j[i], what);
    } else if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            int k = 0;
            try {
                k = std::stoi(it.key());
            } catch (const std::exception&) {
                throw ParseError(std::string(what) + ": bad key " + it.key());
            }
            if (k < 0 || k >= size) throw ParseError(std::string(what) + ": key out of range " + it.key());
            out[k] = as_int(it.value(), what);
        }
    } else {
        throw ParseError(std::string(what) + " must be an array or an object");
    }
    return out;
}

bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return false;
    for (Element x = 0; x < a.order(); ++x)
        for (Element y = 0; y < a.order(); ++y)
            if (a.mul(x, y) != b.mul(x, y)) return false;
    return true;
}

json group_ref_json(const FiniteGroup& g) {
    try {
        FiniteGroup b = FiniteGroup::builtin(g.name());
        if (same_table(b, g)) return g.name();
    } catch (const NotAGroup&) {
    }
    json t = json::array();
    for (Element x = 0; x < g.order(); ++x) {
        json row = json::array();
        for (Element y = 0; y < g.order(); ++y) row.push_back(g.mul(x, y));
        t.push_back(row);
    }
    return json{{"name", g.name()}, {"table", t}};
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

std::shared_ptr<const FiniteGroup> group_from_json(const json& j) {
    try {
        if (j.is_string()) return std::make_shared<const FiniteGroup>(FiniteGroup::builtin(j.get<std::string>()));
        if (!j.is_object()) throw ParseError("group must be a name or an object");
        std::string name = j.value("name", std::string("G"));
        if (j.contains("table")) {
            std::vector<std::vector<int>> t;
            for (const auto& row : j.at("table")) t.push_back(int_list(row, "table row"));
            if (j.contains("order") && as_int(j.at("order"), "order") != static_cast<int>(t.size()))
                throw ParseError("order does not match the table");
            return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(name, t));
        }
        if (j.contains("perm_generators")) {
            std::vector<std::vector<int>> gens;
            for (const auto& p : j.at("perm_generators")) gens.push_back(int_list(p, "permutation"));
            return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(name, gens));
        }
        if (j.contains("name")) return std::make_shared<const FiniteGroup>(FiniteGroup::builtin(name));
        throw ParseError("group object needs a table, perm_generators or a built-in name");
    } catch (const json::exception& ex) {
        throw ParseError(std::string("group: ") + ex.what());
    }
}

std::shared_ptr<const FiniteGroup> group_from_spec(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return group_from_json(read_json_file(spec));
    return std::make_shared<const FiniteGroup>(FiniteGroup::builtin(spec));
}

json group_info_json(const FiniteGroup& g) {
    json out;
    out["name"] = g.name();
    out["order"] = g.order();
    out["abelian"] = g.is_abelian();
    json elems = json::array();
    for (Element x = 0; x < g.order(); ++x)
        elems.push_back({{"index", x}, {"label", g.label(x)}, {"order", g.element_order(x)}, {"class", g.class_of(x)}});
    out["elements"] = elems;
    json cls = json::array();
    for (int c = 0; c < g.class_count(); ++c) cls.push_back(g.class_members(c));
    out["conjugacy_classes"] = cls;
    json sub = json::array();
    for (const auto& sc : subgroup_classes(g)) {
        sub.push_back({{"order", sc.order()},
                       {"representative", sc.canonical().elements()},
                       {"conjugates", sc.members.size()},
                       {"centralizer_order", centralizer(g, sc.canonical()).order()}});
    }
    out["subgroup_classes"] = sub;
    return out;
}

Graph graph_from_json(const json& j) {
    try {
        int nv = as_int(j.at("vertices"), "vertices");
        const json& edges = j.at("edges");
        std::vector<std::pair<int, int>> ends(edges.size(), {-1, -1});
        std::vector<bool> seen(edges.size(), false);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const json& e = edges[i];
            int id = e.contains("id") ? as_int(e.at("id"), "edge id") : static_cast<int>(i);
            if (id < 0 || id >= static_cast<int>(edges.size()) || seen[id])
                throw ParseError("edge ids must be 0..E-1 without repetition");
            seen[id] = true;
            auto ab = int_list(e.at("ends"), "ends");
            if (ab.size() != 2) throw ParseError("ends must have two entries");
            ends[id] = {ab[0], ab[1]};
        }
        return Graph(nv, ends);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("graph: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("graph: ") + ex.what());
    }
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (int e = 0; e < g.edge_count(); ++e)
        edges.push_back({{"id", e}, {"ends", {g.ends()[e].first, g.ends()[e].second}}});
    return json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

DecoratedGraph decorated_from_json(const json& j) {
    DecoratedGraph d;
    d.graph = graph_from_json(j);
    const int nv = d.graph.vertex_count();
    try {
        d.genus = j.contains("genus") ? keyed_list(j.at("genus"), nv, 0, "genus") : std::vector<int>(nv, 0);
        d.markings = j.contains("markings") ? keyed_list(j.at("markings"), nv, 0, "markings") : std::vector<int>(nv, 0);
        if (!j.contains("r")) throw ParseError("base needs r");
        d.r = keyed_list(j.at("r"), d.graph.edge_count(), 0, "r");
    } catch (const json::exception& ex) {
        throw ParseError(std::string("base: ") + ex.what());
    }
    for (int x : d.r)
        if (x < 1) throw ParseError("every edge needs r >= 1");
    return d;
}

json decorated_to_json(const DecoratedGraph& d) {
    json j = graph_to_json(d.graph);
    j["genus"] = d.genus;
    j["markings"] = d.markings;
    json r = json::object();
    for (int e = 0; e < d.graph.edge_count(); ++e) r[std::to_string(e)] = d.r[e];
    j["r"] = r;
    return j;
}

CoverDatum cover_from_json(const json& j) {
    CoverDatum d;
    try {
        d.group = group_from_json(j.at("group"));
        d.base = decorated_from_json(j.at("base"));
        const int nv = d.base.graph.vertex_count();
        const json& m = j.at("monodromy");
        d.monodromy.assign(nv, {});
        if (m.is_array()) {
            if (static_cast<int>(m.size()) != nv) throw ParseError("one monodromy tuple per vertex expected");
            for (int v = 0; v < nv; ++v) d.monodromy[v] = int_list(m[v], "monodromy");
        } else {
            std::vector<bool> have(nv, false);
            for (auto it = m.begin(); it != m.end(); ++it) {
                int v = std::stoi(it.key());
                if (v < 0 || v >= nv) throw ParseError("monodromy key out of range");
                d.monodromy[v] = int_list(it.value(), "monodromy");
                have[v] = true;
            }
            for (int v = 0; v < nv; ++v)
                if (!have[v]) throw ParseError("missing monodromy tuple for vertex " + std::to_string(v));
        }
        const int no = d.base.graph.oriented_count();
        std::vector<int> volt = j.contains("voltages") ? keyed_list(j.at("voltages"), no, -1, "voltages") : std::vector<int>(no, -1);
        for (int oe = 0; oe < no; ++oe) {
            if (volt[oe] >= d.group->order()) throw ParseError("voltage out of range");
        }
        for (int oe = 0; oe < no; ++oe) {
            if (volt[oe] >= 0) continue;
            int mv = volt[Graph::mate(oe)];
            volt[oe] = mv >= 0 ? d.group->inv(mv) : d.group->identity();
        }
        d.voltages = volt;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("cover: ") + ex.what());
    } catch (const NotAGroup& ex) {
        throw ParseError(std::string("cover group: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("cover: ") + ex.what());
    }
    return d;
}

json cover_to_json(const CoverDatum& d) {
    json j;
    j["group"] = group_ref_json(*d.group);
    j["base"] = decorated_to_json(d.base);
    json m = json::object();
    for (std::size_t v = 0; v < d.monodromy.size(); ++v) m[std::to_string(v)] = d.monodromy[v];
    j["monodromy"] = m;
    json volt = json::object();
    for (std::size_t oe = 0; oe < d.voltages.size(); ++oe) volt[std::to_string(oe)] = d.voltages[oe];
    j["voltages"] = volt;
    return j;
}

json ghost_element_json(const GhostElement& a, const CoverContraction& c) {
    json out = json::object();
    for (std::size_t e = 0; e < a.k.size(); ++e) out[std::to_string(c.base.edge_origin[e])] = a.k[e];
    return out;
}

json verdict_to_json(const JuniorVerdict& v, const CoverContraction& c) {
    json out;
    out["lifted_order"] = v.lifted_order;
    out["qr_order"] = v.qr_order;
    json ages = json::array();
    for (const auto& qc : v.classes)
        ages.push_back({{"element", ghost_element_json(qc.element, c)}, {"age", to_string(qc.age)}});
    out["quotient_ages"] = ages;
    out["junior"] = v.is_junior;
    if (v.witness)
        out["witness"] = {{"element", ghost_element_json(v.witness->element, c)},
                          {"lifted", ghost_element_json(v.witness->representative, c)},
                          {"age", to_string(v.witness->age)}};
    else
        out["witness"] = nullptr;
    out["qr_free_check"] = v.qr_free_check;
    out["lifted_closed"] = v.lifted_closed;
    out["separating_model_holds"] = v.separating_model_holds;
    out["separating_model_junior"] = v.separating_model_junior;
    return out;
}

ScanBounds bounds_from_json(const json& j) {
    ScanBounds b;
    try {
        if (j.contains("group")) b.group = j.at("group").get<std::string>();
        if (j.contains("max_vertices")) b.max_vertices = as_int(j.at("max_vertices"), "max_vertices");
        if (j.contains("max_edges")) b.max_edges = as_int(j.at("max_edges"), "max_edges");
        if (j.contains("max_genus")) b.max_genus_per_vertex = as_int(j.at("max_genus"), "max_genus");
        if (j.contains("min_total_genus")) b.min_total_genus = as_int(j.at("min_total_genus"), "min_total_genus");
        if (j.contains("max_total_genus")) b.max_total_genus = as_int(j.at("max_total_genus"), "max_total_genus");
        if (j.contains("r")) b.allowed_r = int_list(j.at("r"), "r");
        if (j.contains("markings")) b.markings = as_int(j.at("markings"), "markings");
        if (j.contains("budget")) b.cover_budget = j.at("budget").get<std::uint64_t>();
        if (j.contains("ghost_budget")) b.ghost_budget = j.at("ghost_budget").get<std::uint64_t>();
        if (j.contains("jobs")) b.jobs = as_int(j.at("jobs"), "jobs");
        if (j.contains("stop_after_witnesses")) b.stop_after_witnesses = j.at("stop_after_witnesses").get<std::uint64_t>();
    } catch (const json::exception& ex) {
        throw ParseError(std::string("bounds: ") + ex.what());
    }
    return b;
}

json bounds_to_json(const ScanBounds& b) {
    return json{{"group", b.group},
                {"max_vertices", b.max_vertices},
                {"max_edges", b.max_edges},
                {"max_genus", b.max_genus_per_vertex},
                {"min_total_genus", b.min_total_genus},
                {"max_total_genus", b.max_total_genus},
                {"r", b.allowed_r},
                {"markings", b.markings},
                {"budget", b.cover_budget},
                {"ghost_budget", b.ghost_budget},
                {"stop_after_witnesses", b.stop_after_witnesses}};
}

namespace {

json histogram_json(const std::map<std::uint64_t, std::uint64_t>& h) {
    json out = json::object();
    for (auto [k, v] : h) out[std::to_string(k)] = v;
    return out;
}

}  // namespace

json scan_result_to_json(const ScanResult& r) {
    json out;
    out["schema"] = 1;
    out["bounds"] = bounds_to_json(r.bounds);
    const ScanSummary& s = r.summary;
    out["summary"] = {{"status", s.status()},
                      {"bases", s.bases},
                      {"instances", s.instances},
                      {"distinct_covers", s.distinct},
                      {"juniors", s.juniors},
                      {"skipped_bases", s.skipped_bases},
                      {"stopped_early", s.stopped_early},
                      {"lifted_order_histogram", histogram_json(s.lifted_histogram)},
                      {"lifted_not_closed", s.non_closed},
                      {"qr_free_failures", s.qr_free_failures},
                      {"separating_model_violations", s.separating_model_violations},
                      {"separating_model_juniors", s.separating_model_juniors}};
    json bases = json::array();
    for (const auto& b : r.bases) {
        bases.push_back({{"id", b.base_id},
                         {"canonical", b.canonical},
                         {"base", decorated_to_json(b.base)},
                         {"covers", b.covers},
                         {"distinct_covers", b.distinct},
                         {"juniors", b.juniors},
                         {"skipped", b.skipped},
                         {"skipped_space", b.skipped_space},
                         {"lifted_order_histogram", histogram_json(b.lifted_histogram)},
                         {"separating_model_violations", b.separating_model_violations},
                         {"separating_model_juniors", b.separating_model_juniors}});
    }
    out["bases"] = bases;
    json wit = json::array();
    for (const auto& w : r.witnesses) {
        CoverGraph cover = build_cover_graph(w.datum);
        CoverContraction c = contract_trivial(cover);
        wit.push_back({{"base_id", w.base_id},
                       {"cover", cover_to_json(w.datum)},
                       {"verdict", verdict_to_json(w.verdict, c)},
                       {"revalidated", w.revalidated}});
    }
    out["witnesses"] = wit;
    return out;
}

std::string scan_result_to_csv(const ScanResult& r) {
    std::ostringstream out;
    out << "base_id,vertices,edges,genus,r,covers,distinct_covers,juniors,skipped,separating_model_violations\n";
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    for (const auto& b : r.bases) {
        out << b.base_id << ',' << b.base.graph.vertex_count() << ',' << b.base.graph.edge_count() << ','
            << join(b.base.genus) << ',' << join(b.base.r) << ',' << b.covers << ',' << b.distinct << ','
            << b.juniors << ',' << (b.skipped ? 1 : 0) << ',' << b.separating_model_violations << '\n';
    }
    out << "# status," << r.summary.status() << ",instances," << r.summary.instances << ",juniors,"
        << r.summary.juniors << '\n';
    return out.str();
}

}  // namespace ghostaut
