#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <zlift/zlift.hpp>

namespace {

using zlift::Json;

constexpr int kExitOk = 0;
constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTheorem = 3;

std::vector<std::int64_t> parse_int_list(const std::string& text, char sep) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
        std::size_t used = 0;
        long long v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::string load_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

zlift::ForbiddenPattern parse_pattern_commas(const std::string& text) {
    auto vals = parse_int_list(text, ',');
    if (vals.size() < 2)
        throw std::invalid_argument("pattern needs at least two sizes, got '" + text + "'");
    std::vector<std::int64_t> sizes(vals.begin(), vals.end() - 1);
    return zlift::ForbiddenPattern::make(sizes, vals.back());
}

int cmd_apfree(std::int64_t m, const std::string& method, const std::string& out_path) {
    zlift::ApFreeSet set;
    if (method == "behrend")
        set = zlift::behrend_sphere_set(m);
    else if (method == "ternary")
        set = zlift::ternary_digit_set(m);
    else if (method == "best")
        set = zlift::best_apfree(m);
    else if (method == "exact")
        set = zlift::exact_max_apfree(m).witness;
    else
        throw std::invalid_argument("unknown method '" + method + "'");
    if (auto v = zlift::verify_ap_free(set.elements))
        throw std::logic_error("generated set has progression " + std::to_string(v->x) + "," +
                               std::to_string(v->y) + "," + std::to_string(v->z));
    Json j = Json::object();
    j["m"] = set.m;
    j["size"] = set.size();
    j["elements"] = set.elements;
    write_text(j.dump(), out_path);
    return kExitOk;
}

int cmd_rsz(std::int64_t m, const std::string& method, const std::string& out_path) {
    zlift::ApFreeSet set;
    if (method == "behrend")
        set = zlift::behrend_sphere_set(m);
    else if (method == "ternary")
        set = zlift::ternary_digit_set(m);
    else if (method == "best")
        set = zlift::best_apfree(m);
    else
        throw std::invalid_argument("unknown set method '" + method + "'");
    zlift::MatchingFamily fam = zlift::build_matching_family(m, set.elements);
    write_text(zlift::encode(fam), out_path);
    return kExitOk;
}

int cmd_base(const std::string& pattern, std::int64_t q, const std::string& out_path) {
    auto vals = parse_int_list(pattern, 'x');
    if (vals.size() != 2) throw std::invalid_argument("pattern must look like 4x7");
    std::int64_t s = vals[0], t = vals[1];
    zlift::BaseSelection sel = zlift::select_base(s, t);
    if (!sel.ok) throw zlift::PlanRefusal(sel.note);
    zlift::BipartiteGraph g;
    switch (sel.kind) {
        case zlift::BaseKind::circulant: g = zlift::circulant_base(q, t); break;
        case zlift::BaseKind::pg: g = zlift::projective_plane_incidence(q); break;
        case zlift::BaseKind::ars: g = zlift::ars_norm_graph(q, s); break;
    }
    std::cerr << sel.note << "\n";
    write_text(zlift::encode(g.to_hypergraph()), out_path);
    return kExitOk;
}

int cmd_lift(const std::string& hyper_path, const std::string& family_path, bool skip_check,
             const std::string& out_path) {
    zlift::PartiteHypergraph h = zlift::decode_hypergraph(load_text(hyper_path));
    zlift::MatchingFamily fam = zlift::decode_family(load_text(family_path));
    zlift::LiftResult res = zlift::lift_once(h, fam, h.r - 2, skip_check);
    Json j = zlift::to_json(res.graph);
    Json stats = Json::object();
    stats["edge_count"] = res.edge_count;
    stats["chebyshev_bound"] = res.bound.str();
    stats["n_used"] = res.n_used;
    j["stats"] = stats;
    write_text(j.dump(), out_path);
    return kExitOk;
}

int cmd_verify(const std::string& hyper_path, const std::string& sizes_text,
               bool both_orientations, const std::string& out_path) {
    zlift::PartiteHypergraph h = zlift::decode_hypergraph(load_text(hyper_path));
    std::vector<std::int64_t> sizes = parse_int_list(sizes_text, ',');
    if (static_cast<std::int64_t>(sizes.size()) != h.r)
        throw std::invalid_argument("--sizes must list exactly one size per part");
    std::vector<std::vector<std::int64_t>> checks{sizes};
    if (both_orientations && h.r >= 3) {
        auto swapped = sizes;
        std::swap(swapped[static_cast<std::size_t>(h.r - 3)],
                  swapped[static_cast<std::size_t>(h.r - 2)]);
        // a swapped orientation too big for its parts cannot occur at all
        bool fits = true;
        for (std::size_t i = 0; i < swapped.size(); ++i)
            if (swapped[i] > h.part_sizes[i]) fits = false;
        if (swapped != sizes && fits) checks.push_back(swapped);
    }
    for (const auto& szs : checks) {
        if (auto w = zlift::contains_partite_copy(h, szs)) {
            Json j = Json::object();
            j["free"] = false;
            j["sizes"] = szs;
            j["witness"] = *w;
            write_text(j.dump(), out_path);
            return kExitWitness;
        }
    }
    Json j = Json::object();
    j["free"] = true;
    write_text(j.dump(), out_path);
    return kExitOk;
}

int cmd_pipeline(const std::string& pattern_text, std::int64_t q, const std::string& m_text,
                 const std::string& verify_text, const std::string& set_method, double budget,
                 const std::string& out_path, const std::string& csv_path,
                 const std::string& graph_path) {
    zlift::ForbiddenPattern target = parse_pattern_commas(pattern_text);
    zlift::PipelinePlan plan = zlift::plan_pipeline(target);
    zlift::PipelineOptions opt;
    opt.q = q;
    if (!m_text.empty()) opt.m = parse_int_list(m_text, ',');
    if (verify_text == "auto")
        opt.verify = zlift::VerifyMode::automatic;
    else if (verify_text == "always")
        opt.verify = zlift::VerifyMode::always;
    else if (verify_text == "never")
        opt.verify = zlift::VerifyMode::never;
    else
        throw std::invalid_argument("--verify must be auto, always, or never");
    opt.budget = budget;
    opt.set_method = set_method;
    zlift::PipelineResult res = zlift::run_pipeline(plan, opt);
    if (!csv_path.empty()) write_text(zlift::report_to_csv(res.report), csv_path);
    if (!graph_path.empty()) write_text(zlift::encode(res.graph), graph_path);
    write_text(zlift::report_to_json(res.report).dump(2), out_path);
    return kExitOk;
}

int cmd_bench(const std::string& construction, const std::string& q_text, std::int64_t s,
              double budget, const std::string& csv_path, const std::string& out_path) {
    zlift::BenchResult res =
        zlift::run_bench(construction, parse_int_list(q_text, ','), s, budget);
    if (!csv_path.empty()) write_text(zlift::report_to_csv(res.rows), csv_path);
    Json j = Json::object();
    j["construction"] = construction;
    j["target_exponent"] = res.target_exponent;
    j["slope"] = res.fit.slope;
    j["intercept"] = res.fit.intercept;
    j["points"] = Json::array();
    for (const auto& [n, e] : res.points) j["points"].push_back(Json::array({n, e}));
    j["residuals"] = res.fit.residuals;
    write_text(j.dump(2), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zarankiewicz lower-bound constructions: AP-free sets, induced-matching "
                 "families, algebraic base graphs, pattern lifts, and freeness verification"};
    app.require_subcommand(1);

    std::int64_t ap_m = 0;
    std::string ap_method = "best", ap_out;
    auto* ap = app.add_subcommand("apfree", "build a 3-AP-free subset of {1..m}");
    ap->add_option("--m", ap_m, "upper bound m")->required();
    ap->add_option("--method", ap_method, "behrend|ternary|best|exact");
    ap->add_option("--out", ap_out, "write JSON here instead of stdout");

    std::int64_t rsz_m = 0;
    std::string rsz_method = "best", rsz_out;
    auto* rz = app.add_subcommand("rsz", "build an induced-matching bipartite family");
    rz->add_option("--m", rsz_m, "AP-free set bound m")->required();
    rz->add_option("--set-method", rsz_method, "best|behrend|ternary");
    rz->add_option("--out", rsz_out, "write JSON here instead of stdout");

    std::string base_pattern, base_out;
    std::int64_t base_q = 0;
    auto* bs = app.add_subcommand("base", "build a certified K(s,t)-free bipartite base");
    bs->add_option("--pattern", base_pattern, "sxt, e.g. 4x7")->required();
    bs->add_option("--q", base_q, "size knob (field order / circulant length)")->required();
    bs->add_option("--out", base_out, "write JSON here instead of stdout");

    std::string lift_h, lift_f, lift_out;
    bool lift_skip = false;
    auto* lf = app.add_subcommand("lift", "expand the middle part through a matching family");
    lf->add_option("--hypergraph", lift_h, "input hypergraph JSON file")->required();
    lf->add_option("--family", lift_f, "matching family JSON file")->required();
    lf->add_flag("--skip-family-check", lift_skip, "trust the family without re-verification");
    lf->add_option("--out", lift_out, "write JSON here instead of stdout");

    std::string ver_h, ver_sizes, ver_out;
    bool ver_single = false;
    auto* vf = app.add_subcommand("verify", "search for a partite copy of K(sizes)");
    vf->add_option("--hypergraph", ver_h, "input hypergraph JSON file")->required();
    vf->add_option("--sizes", ver_sizes, "comma list, one size per part")->required();
    vf->add_flag("--declared-only", ver_single,
                 "check only the declared part order (default also swaps the middle parts)");
    vf->add_option("--out", ver_out, "write JSON here instead of stdout");

    std::string pl_pattern, pl_m, pl_verify = "auto", pl_set = "best";
    std::string pl_out, pl_csv, pl_graph;
    std::int64_t pl_q = 0;
    double pl_budget = 1e8;
    auto* pl = app.add_subcommand("pipeline", "base + repeated lifts for a full pattern");
    pl->add_option("--pattern", pl_pattern, "comma sizes, e.g. 2,2,7")->required();
    pl->add_option("--q", pl_q, "base size knob")->required();
    pl->add_option("--m", pl_m, "family bound per lift (comma list, last reused)");
    pl->add_option("--verify", pl_verify, "auto|always|never");
    pl->add_option("--set-method", pl_set, "best|behrend|ternary");
    pl->add_option("--budget", pl_budget, "verification word-op budget");
    pl->add_option("--out", pl_out, "report JSON file (default stdout)");
    pl->add_option("--csv", pl_csv, "also write the CSV report here");
    pl->add_option("--graph-out", pl_graph, "also write the final hypergraph JSON here");

    std::string bn_construction, bn_q, bn_csv, bn_out;
    std::int64_t bn_s = 4;
    double bn_budget = 1e8;
    auto* bn = app.add_subcommand("bench", "sweep a base construction and fit the exponent");
    bn->add_option("--construction", bn_construction, "pg|ars")->required();
    bn->add_option("--q-list", bn_q, "comma list of prime powers")->required();
    bn->add_option("--s", bn_s, "norm graph s (ars only)");
    bn->add_option("--budget", bn_budget, "verification word-op budget");
    bn->add_option("--csv", bn_csv, "write CSV rows here");
    bn->add_option("--out", bn_out, "summary JSON file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ap->parsed()) return cmd_apfree(ap_m, ap_method, ap_out);
        if (rz->parsed()) return cmd_rsz(rsz_m, rsz_method, rsz_out);
        if (bs->parsed()) return cmd_base(base_pattern, base_q, base_out);
        if (lf->parsed()) return cmd_lift(lift_h, lift_f, lift_skip, lift_out);
        if (vf->parsed()) return cmd_verify(ver_h, ver_sizes, !ver_single, ver_out);
        if (pl->parsed())
            return cmd_pipeline(pl_pattern, pl_q, pl_m, pl_verify, pl_set, pl_budget, pl_out,
                                pl_csv, pl_graph);
        if (bn->parsed()) return cmd_bench(bn_construction, bn_q, bn_s, bn_budget, bn_csv, bn_out);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const zlift::TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return kExitTheorem;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitTheorem;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
