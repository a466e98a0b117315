#include "liouville/report.hpp"

namespace liouville {

namespace {

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

}  // namespace

Json to_json(const VolumeGrowthReport& r) {
    Json j;
    j["sigma"] = r.sigma;
    j["alpha"] = r.alpha;
    j["target_exponent"] = r.target_exponent;
    j["slope"] = number(r.slope);
    j["slope_tolerance"] = r.slope_tolerance;
    j["margin"] = r.margin;
    j["explored"] = r.explored;
    j["bottom_max_ratio"] = number(r.bottom_max_ratio);
    j["top_max_ratio"] = number(r.top_max_ratio);
    j["ratios_bounded"] = r.ratios_bounded;
    j["slope_within_target"] = r.slope_within_target;
    j["consistent"] = r.consistent;
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"R", row.radius},
                        {"W", number(row.mass)},
                        {"ratio", number(row.ratio)},
                        {"slope_so_far", optional_number(row.slope_so_far)}});
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const HypothesisReport& r) {
    Json j;
    j["scope"] = r.scope;
    j["theorem_applies"] = r.theorem_applies;
    j["explored_radius"] = r.explored_radius;
    j["margin"] = r.margin;
    j["explored"] = r.explored;
    Json checks = Json::array();
    for (const auto& c : r.assumptions)
        checks.push_back({{"name", c.name},
                          {"verdict", to_string(c.verdict)},
                          {"measured", optional_number(c.measured)},
                          {"detail", c.detail}});
    j["assumptions"] = std::move(checks);
    j["volume_growth_verdict"] = to_string(r.volume_growth_verdict);
    j["volume_growth"] = r.volume_growth ? to_json(*r.volume_growth) : Json(nullptr);
    return j;
}

Json to_json(const CapacityCertificate& c) {
    Json j;
    j["verdict"] = c.verdict;
    j["consistent"] = c.consistent;
    j["tail_bounded"] = c.tail_bounded;
    j["reasons"] = c.reasons;
    j["sigma"] = c.sigma;
    j["alpha"] = c.alpha;
    j["s"] = c.s;
    j["jump"] = c.jump;
    j["margin"] = c.margin;
    Json rows = Json::array();
    for (const auto& r : c.rows) {
        Json row;
        row["R"] = r.radius;
        row["LHS"] = number(r.lhs);
        row["descent"] = number(r.descent);
        row["transport"] = number(r.transport);
        row["annulus_bound"] = number(r.annulus_bound);
        row["young_bound"] = number(r.young_bound);
        row["hoelder_weighted"] = number(r.hoelder_weighted);
        row["hoelder_bound"] = number(r.hoelder_bound);
        row["annulus_mass"] = number(r.annulus_mass);
        row["C_hat"] = number(r.c_hat);
        row["tail_mass"] = number(r.tail_mass);
        row["annulus_inclusion"] = r.annulus_inclusion;
        row["vanishes_outside_annulus"] = r.vanishes_outside_annulus;
        row["links"] = {{"supersolution", r.supersolution_link}, {"convexity", r.convexity_link},
                        {"cutoff", r.cutoff_link},               {"young", r.young_link},
                        {"hoelder", r.hoelder_link},             {"weighting", r.weighting_link}};
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const LatticeSupersolution& u) {
    return {{"dim", u.dim},     {"sigma", u.sigma}, {"delta", u.delta},
            {"K", u.shift},     {"gamma", u.gamma}, {"lambda", u.lambda}};
}

Json to_json(const TreeSupersolution& u) {
    return {{"sigma", u.sigma}, {"epsilon", u.epsilon}, {"n0", u.offset}, {"delta", u.delta}, {"decay", u.decay}};
}

Json to_json(const LatticeTuning& t) {
    Json j;
    j["params"] = to_json(t.solution);
    j["initial_delta"] = t.initial_delta;
    j["initial_K"] = t.initial_shift;
    j["check_radius"] = t.check_radius;
    j["region_size"] = t.region_size;
    j["scan"] = to_json(t.scan);
    Json trace = Json::array();
    for (const auto& s : t.trace)
        trace.push_back({{"delta", s.delta},
                         {"K", s.shift},
                         {"max_residual", number(s.max_residual)},
                         {"worst_excess", number(s.worst_excess)},
                         {"worst_vertex", s.worst_vertex},
                         {"pass", s.pass}});
    j["trace"] = std::move(trace);
    return j;
}

Json to_json(const TreeTuning& t) {
    Json j;
    j["degree"] = t.degree;
    j["params"] = to_json(t.solution);
    j["feasibility_limit"] = t.limit;
    j["lower_bracket"] = t.lower_bracket;
    j["upper_bracket"] = t.upper_bracket;
    j["C1"] = t.lower_constant;
    j["C2"] = t.upper_constant;
    j["root_threshold"] = t.root_threshold;
    j["scan"] = to_json(t.scan);
    Json trace = Json::array();
    for (const auto& s : t.trace)
        trace.push_back({{"n0", s.offset}, {"lower", s.lower}, {"upper", s.upper}, {"accepted", s.accepted}});
    j["trace"] = std::move(trace);
    return j;
}

Json to_json(const RadialProfile& p, bool with_values) {
    Json j;
    j["quotient"] = p.label;
    j["sigma"] = p.sigma;
    j["u0"] = p.initial();
    j["max_depth"] = p.max_depth;
    j["stop"] = to_string(p.stop);
    j["last_level"] = p.last_level();
    j["last_value"] = number(p.values.back());
    j["positive_through_depth"] = p.positive_through_depth();
    if (with_values) {
        Json values = Json::array();
        for (double v : p.values) values.push_back(number(v));
        j["values"] = std::move(values);
    }
    return j;
}

Json to_json(const PositiveThreshold& t) {
    Json j;
    j["threshold"] = t.threshold;
    j["lower"] = t.lower;
    j["upper"] = t.upper;
    j["positive_below"] = t.positive_below;
    j["rounds"] = t.rounds;
    j["comparison_holds"] = t.comparison_holds;
    j["comparison_violation"] = t.comparison_violation ? Json(*t.comparison_violation) : Json(nullptr);
    j["positive_witness"] = to_json(t.positive_witness, false);
    j["crossing_witness"] = to_json(t.crossing_witness, false);
    return j;
}

Json to_json(const FamilyGridScan& g) {
    Json j;
    j["interpretation"] = g.interpretation;
    j["dim"] = g.dim;
    j["sigma"] = g.sigma;
    j["critical_exponent"] = number(g.critical_exponent);
    j["radius"] = g.radius;
    j["margin"] = g.margin;
    j["region_size"] = g.region_size;
    j["passing"] = g.passing;
    j["every_member_fails"] = g.every_member_fails;
    Json cells = Json::array();
    for (const auto& c : g.cells)
        cells.push_back({{"delta", c.delta},
                         {"K", c.shift},
                         {"max_residual", number(c.max_residual)},
                         {"worst_excess", number(c.worst_excess)},
                         {"argmax_vertex", c.argmax},
                         {"pass", c.pass}});
    j["cells"] = std::move(cells);
    return j;
}

Json to_json(const StencilSpotCheck& s) {
    return {{"samples", s.samples},           {"max_depth", s.max_depth},
            {"worst_gap", number(s.worst_gap)}, {"worst_vertex", s.worst_vertex},
            {"tolerance", s.tolerance},       {"agree", s.agree}};
}

}  // namespace liouville
