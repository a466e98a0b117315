#ifndef LIOUVILLE_REPORT_HPP
#define LIOUVILLE_REPORT_HPP

// JSON forms of every report type. Keys keep insertion order so a report
// written twice from the same inputs is byte-identical. Non-finite doubles
// become null.

#include "liouville/metric_volume.hpp"
#include "liouville/radial.hpp"
#include "liouville/supersolution.hpp"
#include "liouville/verifier.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <optional>

namespace liouville {

using Json = nlohmann::ordered_json;

inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class V>
Json vertex_json(const std::optional<V>& x) {
    return x ? Json(to_string(*x)) : Json(nullptr);
}

template <class V>
Json to_json(const ResidualScan<V>& scan) {
    Json j;
    j["region"] = scan.region;
    j["size"] = scan.size;
    j["sigma"] = scan.sigma;
    j["max_residual"] = number(scan.max_residual);
    j["argmax_vertex"] = vertex_json(scan.argmax);
    j["worst_excess"] = number(scan.worst_excess);
    j["worst_vertex"] = vertex_json(scan.worst_vertex);
    j["pass"] = scan.pass;
    j["tolerance"] = {{"relative", scan.tolerance.relative}, {"floor", scan.tolerance.floor}};
    return j;
}

template <class V>
Json to_json(const CutoffEstimate<V>& e) {
    Json j;
    j["R"] = e.radius;
    j["C_hat"] = number(e.c_hat);
    j["C_hat_raw"] = number(e.c_hat_raw);
    j["argmax_vertex"] = vertex_json(e.argmax);
    j["annulus_size"] = e.annulus_size;
    j["vanishes_outside_annulus"] = e.vanishes_outside_annulus;
    j["first_offender"] = vertex_json(e.first_offender);
    j["convexity_holds"] = e.convexity_holds;
    j["worst_convexity_gap"] = number(e.worst_convexity_gap);
    j["edges_checked"] = e.edges_checked;
    j["annulus_inclusion"] = e.annulus_inclusion;
    j["explored"] = e.explored;
    return j;
}

template <class V>
Json to_json(const MaximumPrincipleVerdict<V>& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["vertex"] = vertex_json(v.vertex);
    j["component_size"] = v.component_size;
    j["detail"] = v.detail;
    return j;
}

Json to_json(const VolumeGrowthReport& r);
Json to_json(const HypothesisReport& r);
Json to_json(const CapacityCertificate& c);
Json to_json(const LatticeTuning& t);
Json to_json(const TreeTuning& t);
Json to_json(const RadialProfile& p, bool with_values);
Json to_json(const PositiveThreshold& t);
Json to_json(const FamilyGridScan& g);
Json to_json(const StencilSpotCheck& s);
Json to_json(const LatticeSupersolution& u);
Json to_json(const TreeSupersolution& u);

}  // namespace liouville

#endif
