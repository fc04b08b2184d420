#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ghostaut/errors.hpp"
#include "ghostaut/json_io.hpp"

using namespace ghostaut;

namespace {

enum Exit { kClean = 0, kWitnesses = 2, kIncomplete = 3, kInputError = 4, kInvalid = 5 };

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << text;
}

int group_info(const std::string& spec) {
    auto G = group_from_spec(spec);
    std::cout << group_info_json(*G).dump(2) << '\n';
    return kClean;
}

int cover_check(const std::string& path) {
    CoverDatum datum = cover_from_json(read_json_file(path));
    CoverGraph cover = build_cover_graph(datum);
    validate_cover(cover);
    const FiniteGroup& G = *datum.group;
    json out;
    out["valid"] = true;
    out["group"] = G.name();
    out["vertices"] = cover.action.graph().vertex_count();
    out["edges"] = cover.action.graph().edge_count();
    json subs = json::array();
    for (const auto& h : cover.vertex_subgroups) subs.push_back(h.elements());
    out["vertex_subgroups"] = subs;
    json tf = json::object();
    auto types = type_function(cover);
    for (std::size_t oe = 0; oe < types.size(); ++oe) {
        Element rep = G.class_representative(types[oe]);
        tf[std::to_string(oe)] = {{"class", types[oe]}, {"representative", G.label(rep)}};
    }
    out["type_function"] = tf;
    std::cout << out.dump(2) << '\n';
    return kClean;
}

int ghost_compute(const std::string& path, std::uint64_t budget) {
    CoverDatum datum = cover_from_json(read_json_file(path));
    CoverGraph cover = build_cover_graph(datum);
    GhostContext ctx(cover);
    LiftedGhostGroup lifted = lifted_ghost_group(ctx, budget);
    JuniorVerdict v = junior_verdict(lifted, ctx.separating());
    const CoverContraction& c = ctx.contraction();
    json out;
    json r = json::object();
    for (std::size_t e = 0; e < c.r.size(); ++e) r[std::to_string(c.base.edge_origin[e])] = c.r[e];
    out["r"] = r;
    json sep = json::array();
    for (std::size_t e = 0; e < c.r.size(); ++e)
        if (ctx.separating()[e]) sep.push_back(c.base.edge_origin[e]);
    out["separating_edges"] = sep;
    json el = json::array();
    for (const auto& a : lifted.elements) el.push_back(ghost_element_json(a, c));
    out["lifted"] = el;
    QrSubgroup qr = qr_subgroup(lifted, ctx.separating());
    json qrm = json::object();
    auto moduli = qr.rescaled_moduli();
    for (std::size_t e = 0; e < c.r.size(); ++e)
        qrm[std::to_string(c.base.edge_origin[e])] = {{"qr_factor", qr.factor_order[e]}, {"rescaled_modulus", moduli[e]}};
    out["qr"] = qrm;
    out["verdict"] = verdict_to_json(v, c);
    std::cout << out.dump(2) << '\n';
    return kClean;
}

struct ScanFlags {
    std::string group;
    int max_vertices = 0, max_edges = 0, max_genus = -1, jobs = 0;
    std::uint64_t budget = 0;
    std::string out, format = "json";
};

int scan(const std::string& bounds_path, const ScanFlags& f) {
    ScanBounds b = bounds_path.empty() ? ScanBounds{} : bounds_from_json(read_json_file(bounds_path));
    if (!f.group.empty()) b.group = f.group;
    if (f.max_vertices > 0) b.max_vertices = f.max_vertices;
    if (f.max_edges > 0) b.max_edges = f.max_edges;
    if (f.max_genus >= 0) b.max_genus_per_vertex = f.max_genus;
    if (f.budget > 0) b.cover_budget = f.budget;
    if (f.jobs > 0) b.jobs = f.jobs;
    b.validate();
    auto G = group_from_spec(b.group);
    ScanResult res = scan_j_locus(b, G);
    emit(f.format == "csv" ? scan_result_to_csv(res) : scan_result_to_json(res).dump(2) + "\n", f.out);
    std::cerr << "status: " << res.summary.status() << ", bases " << res.summary.bases << ", instances "
              << res.summary.instances << ", juniors " << res.summary.juniors << ", skipped "
              << res.summary.skipped_bases << '\n';
    const std::string s = res.summary.status();
    if (s == "witnesses") return kWitnesses;
    if (s == "incomplete") return kIncomplete;
    return kClean;
}

int hurwitz(int genus, const std::string& spec, const std::vector<int>& classes, const std::string& image) {
    auto G = group_from_spec(spec);
    std::optional<int> image_class;
    if (!image.empty()) {
        auto sc = subgroup_classes(*G);
        if (image == G->name()) {
            image_class = static_cast<int>(sc.size()) - 1;
        } else {
            try {
                image_class = std::stoi(image);
            } catch (const std::exception&) {
                throw ParseError("--image takes a subgroup class index or the group name");
            }
        }
    }
    MonodromyTable table(G, std::max(genus, 0));
    HurwitzResult res = hurwitz_realizable(table, genus, classes, image_class);
    json out;
    out["realizable"] = res.realizable;
    if (res.realizable) {
        json t = json::array();
        for (Element x : res.tuple) t.push_back(G->label(x));
        out["tuple"] = t;
    }
    std::cout << out.dump(2) << '\n';
    return kClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ghost automorphism and junior-locus tools"};
    app.require_subcommand(1);

    auto* group_cmd = app.add_subcommand("group", "finite group utilities");
    group_cmd->require_subcommand(1);
    auto* info = group_cmd->add_subcommand("info", "conjugacy classes, subgroup classes, centralizers");
    std::string group_spec;
    info->add_option("spec", group_spec, "built-in name or JSON file")->required();

    auto* cover_cmd = app.add_subcommand("cover", "admissible cover data");
    cover_cmd->require_subcommand(1);
    auto* check = cover_cmd->add_subcommand("check", "validate a cover and print its type function");
    std::string cover_path;
    check->add_option("file", cover_path)->required();

    auto* ghost_cmd = app.add_subcommand("ghost", "ghost automorphisms");
    ghost_cmd->require_subcommand(1);
    auto* compute = ghost_cmd->add_subcommand("compute", "lifted ghosts, QR subgroup, ages, verdict");
    std::string ghost_path;
    std::uint64_t ghost_budget = 10'000'000;
    compute->add_option("file", ghost_path)->required();
    compute->add_option("--budget", ghost_budget, "cap on the size of the ghost group");

    auto* scan_cmd = app.add_subcommand("scan", "scan the junior locus over bounded combinatorial types");
    std::string bounds_path;
    ScanFlags flags;
    scan_cmd->add_option("bounds", bounds_path, "bounds JSON file");
    scan_cmd->add_option("--group", flags.group);
    scan_cmd->add_option("--max-vertices", flags.max_vertices);
    scan_cmd->add_option("--max-edges", flags.max_edges);
    scan_cmd->add_option("--max-genus", flags.max_genus);
    scan_cmd->add_option("--budget", flags.budget, "cover combinations per base");
    scan_cmd->add_option("--out", flags.out);
    scan_cmd->add_option("--format", flags.format)->check(CLI::IsMember({"json", "csv"}));
    scan_cmd->add_option("--jobs", flags.jobs);

    auto* hur = app.add_subcommand("hurwitz", "realizability of a branch datum");
    int hur_genus = 0;
    std::string hur_group, hur_image;
    std::vector<int> hur_classes;
    hur->add_option("genus", hur_genus)->required();
    hur->add_option("group", hur_group)->required();
    hur->add_option("classes", hur_classes, "conjugacy class indices");
    hur->add_option("--image", hur_image, "subgroup class index or the group name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*group_cmd) return group_info(group_spec);
        if (*cover_cmd) return cover_check(cover_path);
        if (*ghost_cmd) return ghost_compute(ghost_path, ghost_budget);
        if (*scan_cmd) return scan(bounds_path, flags);
        if (*hur) return hurwitz(hur_genus, hur_group, hur_classes, hur_image);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const NotAGroup& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (" << e.requested << " > " << e.cap << ")\n";
        return kIncomplete;
    } catch (const std::exception& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return kInvalid;
    }
    return kClean;
}
