#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zlift/apfree.hpp"
#include "zlift/basegraphs.hpp"
#include "zlift/core.hpp"
#include "zlift/lift.hpp"
#include "zlift/rsz.hpp"
#include "zlift/verifier.hpp"

namespace zlift {

// plan cannot be built or run as requested (bad knobs, no certified base)
struct PlanRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a construction whose freeness is theorem-backed produced a forbidden copy;
// this is a bug in the artifact, never a property of the inputs
struct TheoremViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelinePlan {
    ForbiddenPattern target;
    ForbiddenPattern base_pattern;  // fully merged bipartite K(s,t)
    BaseKind base_kind = BaseKind::circulant;
    std::string base_note;
    // pattern each lift must leave free, in execution order; last one = target
    std::vector<ForbiddenPattern> stage_patterns;
};

// Merge the target down to a bipartite K(s,t), pick a certified base for it,
// and list the lift stages that rebuild the target.
inline PipelinePlan plan_pipeline(const ForbiddenPattern& p) {
    PipelinePlan plan;
    plan.target = p;
    std::vector<ForbiddenPattern> chain{p};
    while (chain.back().r > 2) chain.push_back(merge_pattern(chain.back()));
    plan.base_pattern = chain.back();
    BaseSelection sel = select_base(plan.base_pattern.sizes[0], plan.base_pattern.t);
    if (!sel.ok) throw PlanRefusal("plan_pipeline: " + sel.note);
    plan.base_kind = sel.kind;
    plan.base_note = sel.note;
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it)
        plan.stage_patterns.push_back(*it);
    return plan;
}

enum class VerifyMode { automatic, always, never };

struct PipelineOptions {
    std::int64_t q = 0;            // base scale knob
    std::vector<std::int64_t> m;   // family bound per lift; last entry reused
    VerifyMode verify = VerifyMode::automatic;
    double budget = 1e8;           // verification word-op budget
    std::string set_method = "best";  // best | behrend | ternary
};

struct StepRecord {
    std::string step;     // "base", "lift1", ... (bench rows use "q=...")
    std::string pattern;  // the pattern this step's graph must avoid
    std::vector<std::int64_t> part_sizes;
    std::int64_t n_max = 0;
    std::int64_t edges = 0;
    std::string chebyshev = "n/a";  // exact rational for lifts
    std::string target_exponent;
    std::string verified = "skipped";  // true | false(budget) | skipped
    Json meta = Json::object();        // step provenance

    bool operator==(const StepRecord& o) const {
        return step == o.step && pattern == o.pattern && part_sizes == o.part_sizes &&
               n_max == o.n_max && edges == o.edges && chebyshev == o.chebyshev &&
               target_exponent == o.target_exponent && verified == o.verified && meta == o.meta;
    }
};

struct PipelineReport {
    std::string target;
    std::string target_exponent;
    std::string determinism = "deterministic construction path; no random seeds";
    std::vector<StepRecord> steps;

    bool operator==(const PipelineReport& o) const {
        return target == o.target && target_exponent == o.target_exponent &&
               determinism == o.determinism && steps == o.steps;
    }
};

struct PipelineResult {
    PipelineReport report;
    PartiteHypergraph graph;
};

// The size lists a lifted graph must be checked against: the declared part
// order, plus the two middle parts swapped when that differs. The exclusion
// argument covers both, so both are certified.
inline std::vector<std::vector<std::int64_t>> orientation_sizes(const ForbiddenPattern& p) {
    std::vector<std::vector<std::int64_t>> out{p.part_sizes()};
    if (p.r >= 3) {
        auto swapped = out[0];
        std::swap(swapped[static_cast<std::size_t>(p.r - 3)],
                  swapped[static_cast<std::size_t>(p.r - 2)]);
        if (swapped != out[0]) out.push_back(swapped);
    }
    return out;
}

namespace detail {

inline bool pattern_fits(const PartiteHypergraph& h, const std::vector<std::int64_t>& sizes) {
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] > h.part_sizes[i]) return false;
    return true;
}

inline std::string witness_str(const Witness& w) {
    std::string out = "{";
    for (std::size_t p = 0; p < w.size(); ++p) {
        out += p ? " | " : "";
        for (std::size_t i = 0; i < w[p].size(); ++i)
            out += (i ? "," : "") + std::to_string(w[p][i]);
    }
    return out + "}";
}

}  // namespace detail

inline PipelineResult run_pipeline(const PipelinePlan& plan, const PipelineOptions& opt) {
    if (opt.q < 1) throw PlanRefusal("run_pipeline: base scale q must be positive");
    PipelineResult res;
    res.report.target = plan.target.str();
    res.report.target_exponent = kst_exponent(plan.target).str();

    BipartiteGraph base;
    Json base_meta = Json::object();
    base_meta["kind"] = base_kind_str(plan.base_kind);
    base_meta["q"] = opt.q;
    base_meta["note"] = plan.base_note;
    switch (plan.base_kind) {
        case BaseKind::circulant:
            base = circulant_base(opt.q, plan.base_pattern.t);
            break;
        case BaseKind::pg: {
            base = projective_plane_incidence(opt.q);
            auto pk = factor_prime_power(opt.q);
            base_meta["modulus"] = FiniteField::make(pk->first, pk->second).modulus_string();
            break;
        }
        case BaseKind::ars: {
            std::int64_t s1 = plan.base_pattern.sizes[0];
            base = ars_norm_graph(opt.q, s1);
            auto pk = factor_prime_power(opt.q);
            base_meta["modulus"] =
                FiniteField::make(pk->first, pk->second * (s1 - 1)).modulus_string();
            break;
        }
    }

    PartiteHypergraph cur = base.to_hypergraph();
    {
        StepRecord rec;
        rec.step = "base";
        rec.pattern = plan.base_pattern.str();
        rec.part_sizes = cur.part_sizes;
        rec.n_max = cur.max_part_size();
        rec.edges = cur.edge_count();
        rec.target_exponent = kst_exponent(plan.base_pattern).str();
        rec.meta = base_meta;
        res.report.steps.push_back(std::move(rec));
    }

    std::int64_t prev_edges = cur.edge_count();
    for (std::size_t i = 0; i < plan.stage_patterns.size(); ++i) {
        if (opt.m.empty())
            throw PlanRefusal("run_pipeline: pattern needs " +
                              std::to_string(plan.stage_patterns.size()) +
                              " lift(s) but no family bound m was given");
        std::int64_t m = opt.m[std::min(i, opt.m.size() - 1)];
        std::int64_t n_middle = cur.part_sizes[static_cast<std::size_t>(cur.r - 2)];
        std::int64_t required = (n_middle + 4) / 3;  // least m with 3m-2 >= n_middle
        if (m < required)
            throw PlanRefusal("run_pipeline: lift " + std::to_string(i + 1) + " needs m >= " +
                              std::to_string(required) + " (middle part has " +
                              std::to_string(n_middle) + " vertices), got m = " +
                              std::to_string(m));

        ApFreeSet set;
        std::string kind;
        if (opt.set_method == "ternary") {
            set = ternary_digit_set(m);
            kind = "ternary";
        } else if (opt.set_method == "behrend") {
            set = behrend_sphere_set(m);
            kind = "behrend";
        } else if (opt.set_method == "best") {
            ApFreeSet tern = ternary_digit_set(m), beh = behrend_sphere_set(m);
            if (beh.size() > tern.size()) {
                set = std::move(beh);
                kind = "behrend";
            } else {
                set = std::move(tern);
                kind = "ternary";
            }
        } else {
            throw PlanRefusal("run_pipeline: unknown set method '" + opt.set_method + "'");
        }

        MatchingFamily fam = build_matching_family(m, set.elements);
        LiftResult lifted = lift_once(cur, fam, cur.r - 2);

        StepRecord rec;
        rec.step = "lift" + std::to_string(i + 1);
        rec.pattern = plan.stage_patterns[i].str();
        rec.part_sizes = lifted.graph.part_sizes;
        rec.n_max = lifted.graph.max_part_size();
        rec.edges = lifted.edge_count;
        rec.chebyshev = lifted.bound.str();
        rec.target_exponent = kst_exponent(plan.stage_patterns[i]).str();
        rec.meta["m"] = m;
        rec.meta["set_method"] = opt.set_method;
        rec.meta["set_kind"] = kind;
        rec.meta["set_size"] = set.size();
        if (kind == "behrend") {
            BehrendParams bp = behrend_parameters(m);
            rec.meta["behrend_k"] = bp.k;
            rec.meta["behrend_d"] = bp.d;
        }
        rec.meta["family_edges"] = fam.graph.edge_count();
        rec.meta["family_matchings"] = static_cast<std::int64_t>(fam.matchings.size());
        rec.meta["n_used"] = lifted.n_used;
        if (prev_edges > 0 && lifted.edge_count > 0) {
            Rational ratio(lifted.edge_count, prev_edges);
            rec.meta["edge_ratio"] = ratio.str();
            if (rec.n_max >= 2)
                rec.meta["log_ratio_vs_log_n"] =
                    std::log(ratio.to_double()) / std::log(static_cast<double>(rec.n_max));
        }
        prev_edges = lifted.edge_count;
        cur = std::move(lifted.graph);
        res.report.steps.push_back(std::move(rec));
    }

    // verify the final graph only; intermediate freeness is what the theorem
    // transfers, and the test suite covers it property-style
    StepRecord& last = res.report.steps.back();
    const ForbiddenPattern& final_pattern =
        plan.stage_patterns.empty() ? plan.base_pattern : plan.stage_patterns.back();
    if (opt.verify == VerifyMode::never) {
        last.verified = "skipped";
    } else {
        auto orientations = orientation_sizes(final_pattern);
        double total = 0;
        for (const auto& szs : orientations)
            if (detail::pattern_fits(cur, szs)) total += estimate_verify_words(cur, szs);
        if (opt.verify == VerifyMode::automatic && total > opt.budget) {
            last.verified = "false(budget)";
        } else {
            for (const auto& szs : orientations) {
                if (!detail::pattern_fits(cur, szs)) continue;  // cannot occur at all
                if (auto w = contains_partite_copy(cur, szs))
                    throw TheoremViolation(
                        "run_pipeline: final graph contains a forbidden copy at witness " +
                        detail::witness_str(*w));
            }
            last.verified = "true";
        }
    }

    res.graph = std::move(cur);
    return res;
}

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
};

// least squares on (ln n, ln e)
inline ExponentFit estimate_exponent(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
    if (pts.size() < 2) throw std::invalid_argument("estimate_exponent: need at least two points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].first < 1 || pts[i].second < 1)
            throw std::invalid_argument("estimate_exponent: points must satisfy n, e >= 1");
        if (i > 0 && pts[i].first <= pts[i - 1].first)
            throw std::invalid_argument("estimate_exponent: n must be strictly increasing");
    }
    std::vector<double> xs, ys;
    for (const auto& [n, e] : pts) {
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(static_cast<double>(e)));
    }
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= static_cast<double>(xs.size());
    ym /= static_cast<double>(ys.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
    return fit;
}

inline std::string part_sizes_str(const std::vector<std::int64_t>& ps) {
    std::string out;
    for (auto v : ps) {
        if (!out.empty()) out += "x";
        out += std::to_string(v);
    }
    return out;
}

// pattern cells carry commas, so they are always quoted
inline std::string report_to_csv(const PipelineReport& r) {
    std::string out = "pattern,step,n_max,part_sizes,edges,chebyshev_bound,target_exponent,verified\n";
    for (const auto& s : r.steps)
        out += "\"" + s.pattern + "\"," + s.step + "," + std::to_string(s.n_max) + "," +
               part_sizes_str(s.part_sizes) + "," + std::to_string(s.edges) + "," + s.chebyshev +
               "," + s.target_exponent + "," + s.verified + "\n";
    return out;
}

inline Json report_to_json(const PipelineReport& r) {
    Json j = Json::object();
    j["target"] = r.target;
    j["target_exponent"] = r.target_exponent;
    j["determinism"] = r.determinism;
    j["steps"] = Json::array();
    for (const auto& s : r.steps) {
        Json js = Json::object();
        js["step"] = s.step;
        js["pattern"] = s.pattern;
        js["part_sizes"] = s.part_sizes;
        js["n_max"] = s.n_max;
        js["edges"] = s.edges;
        js["chebyshev_bound"] = s.chebyshev;
        js["target_exponent"] = s.target_exponent;
        js["verified"] = s.verified;
        js["meta"] = s.meta;
        j["steps"].push_back(std::move(js));
    }
    return j;
}

inline PipelineReport report_from_json(const Json& j) {
    auto need = [&](const Json& o, const char* key) -> const Json& {
        if (!o.is_object() || !o.contains(key))
            throw DecodeError(std::string("report: missing key '") + key + "'");
        return o.at(key);
    };
    auto as_str = [&](const Json& v, const char* key) -> std::string {
        if (!v.is_string()) throw DecodeError(std::string("report: '") + key + "' must be a string");
        return v.get<std::string>();
    };
    PipelineReport r;
    r.target = as_str(need(j, "target"), "target");
    r.target_exponent = as_str(need(j, "target_exponent"), "target_exponent");
    r.determinism = as_str(need(j, "determinism"), "determinism");
    const Json& steps = need(j, "steps");
    if (!steps.is_array()) throw DecodeError("report: 'steps' must be an array");
    for (const auto& js : steps) {
        StepRecord s;
        s.step = as_str(need(js, "step"), "step");
        s.pattern = as_str(need(js, "pattern"), "pattern");
        const Json& ps = need(js, "part_sizes");
        if (!ps.is_array()) throw DecodeError("report: 'part_sizes' must be an array");
        for (const auto& v : ps) {
            if (!v.is_number_integer()) throw DecodeError("report: part sizes must be integers");
            s.part_sizes.push_back(v.get<std::int64_t>());
        }
        if (!need(js, "n_max").is_number_integer() || !need(js, "edges").is_number_integer())
            throw DecodeError("report: counts must be integers");
        s.n_max = js.at("n_max").get<std::int64_t>();
        s.edges = js.at("edges").get<std::int64_t>();
        s.chebyshev = as_str(need(js, "chebyshev_bound"), "chebyshev_bound");
        s.target_exponent = as_str(need(js, "target_exponent"), "target_exponent");
        s.verified = as_str(need(js, "verified"), "verified");
        s.meta = need(js, "meta");
        r.steps.push_back(std::move(s));
    }
    return r;
}

struct BenchResult {
    PipelineReport rows;  // CSV-ready; one step per q
    std::vector<std::pair<std::int64_t, std::int64_t>> points;  // (n_max, edges)
    ExponentFit fit;
    std::string target_exponent;
};

// Sweep one base construction over a q list, recording exact edge counts and
// honestly budget-gated freeness verification, then fit the growth exponent.
inline BenchResult run_bench(const std::string& construction,
                             const std::vector<std::int64_t>& q_list, std::int64_t s,
                             double budget) {
    if (q_list.empty()) throw std::invalid_argument("run_bench: empty q list");
    for (std::size_t i = 1; i < q_list.size(); ++i)
        if (q_list[i] <= q_list[i - 1])
            throw std::invalid_argument("run_bench: q list must be strictly increasing");

    ForbiddenPattern pat;
    if (construction == "pg") {
        pat = ForbiddenPattern::make({2}, 2);
    } else if (construction == "ars") {
        std::int64_t threshold = 1;  // (s-1)! + 1, the norm graph's freeness pattern
        for (std::int64_t i = 2; i < s; ++i) threshold = checked_mul(threshold, i);
        threshold += 1;
        pat = ForbiddenPattern::make({s}, threshold);
    } else {
        throw std::invalid_argument("run_bench: unknown construction '" + construction + "'");
    }

    BenchResult out;
    out.rows.target = construction;
    out.rows.target_exponent = kst_exponent(pat).str();
    out.target_exponent = out.rows.target_exponent;

    for (auto q : q_list) {
        BipartiteGraph g = construction == "pg" ? projective_plane_incidence(q)
                                                : ars_norm_graph(q, s);
        PartiteHypergraph h = g.to_hypergraph();
        StepRecord rec;
        rec.step = "q=" + std::to_string(q);
        rec.pattern = pat.str();
        rec.part_sizes = h.part_sizes;
        rec.n_max = h.max_part_size();
        rec.edges = h.edge_count();
        rec.target_exponent = out.rows.target_exponent;
        rec.meta["construction"] = construction;
        rec.meta["q"] = q;
        if (construction == "ars") rec.meta["s"] = s;

        std::vector<std::int64_t> sizes = pat.part_sizes();
        if (!detail::pattern_fits(h, sizes)) {
            rec.verified = "true";  // pattern larger than a part cannot occur
        } else if (estimate_verify_words(h, sizes) > budget) {
            rec.verified = "false(budget)";
        } else {
            if (auto w = contains_partite_copy(h, sizes))
                throw TheoremViolation("run_bench: " + construction + " at q=" +
                                       std::to_string(q) + " contains " + pat.str() +
                                       " at witness " + detail::witness_str(*w));
            rec.verified = "true";
        }
        out.points.emplace_back(rec.n_max, rec.edges);
        out.rows.steps.push_back(std::move(rec));
    }
    out.fit = estimate_exponent(out.points);
    return out;
}

}  // namespace zlift
