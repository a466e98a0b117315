#include "liouville/verifier.hpp"

#include "liouville/format.hpp"

namespace liouville {

double CutoffProfile::value(double t) const noexcept {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    // 1 - s5(x) = s5(1 - x); the upper half goes through s5 directly so the
    // value never rounds below 0 near t = 2.
    const auto s5 = [](double y) { return y * y * y * (10.0 + y * (-15.0 + 6.0 * y)); };
    const double x = t - 1.0;
    return x <= 0.5 ? 1.0 - s5(x) : s5(2.0 - t);
}

double CutoffProfile::derivative(double t) const noexcept {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double x = t - 1.0;
    return -30.0 * x * x * (x - 1.0) * (x - 1.0);
}

double CutoffProfile::second_derivative(double t) const noexcept {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double x = t - 1.0;
    return -60.0 * x * (2.0 * x - 1.0) * (x - 1.0);
}

CutoffProfile default_cutoff() { return CutoffProfile{}; }

const char* to_string(MaximumPrincipleKind kind) noexcept {
    switch (kind) {
        case MaximumPrincipleKind::strictly_positive: return "strictly-positive";
        case MaximumPrincipleKind::identically_zero_on_component: return "identically-zero-on-component";
        case MaximumPrincipleKind::violation: return "violation";
    }
    return "unknown";
}

namespace detail {

bool within(double smaller, double larger, double scale) {
    return smaller <= larger + 1e-12 * (std::abs(smaller) + std::abs(larger) + scale);
}

void finish_certificate(CapacityCertificate& cert) {
    const auto& rows = cert.rows;
    const std::size_t half = rows.size() / 2;
    if (half > 0) {
        double bottom = 0.0, top = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double& slot = i < half ? bottom : top;
            slot = std::max(slot, rows[i].tail_mass);
        }
        cert.tail_bounded = top <= 1.05 * bottom;
        if (!cert.tail_bounded)
            cert.reasons.push_back("tail mass sum_{B_R} mu v u^sigma keeps growing (" + format_number(bottom) + " -> " +
                                   format_number(top) + "): no R-independent integrability bound");
    }
    bool inequality = true;
    for (const auto& row : rows) {
        const std::string at = "R=" + format_number(row.radius) + ": ";
        if (!row.supersolution_link) {
            inequality = false;
            cert.reasons.push_back(at + "LHS exceeds -sum phi^s mu Delta u, so u violates Delta u + v u^sigma <= 0");
        }
        if (!row.convexity_link) cert.reasons.push_back(at + "convexity link fails (numerical pathology)");
        if (!row.cutoff_link) cert.reasons.push_back(at + "cutoff-Laplacian link fails (numerical pathology)");
        if (!row.young_link) cert.reasons.push_back(at + "Young link fails (numerical pathology)");
        if (!row.hoelder_link) cert.reasons.push_back(at + "Hoelder link fails (numerical pathology)");
        if (!row.weighting_link) cert.reasons.push_back(at + "dropping phi factors raised nothing (numerical pathology)");
        if (!row.annulus_inclusion) cert.reasons.push_back(at + "A_R is not inside B_4R \\ B_R/2 yet");
        if (!row.vanishes_outside_annulus) cert.reasons.push_back(at + "-Delta phi is nonzero outside A_R");
    }
    cert.consistent = inequality && cert.tail_bounded;
    cert.verdict = cert.consistent ? "consistent with being a solution" : "inconsistent with being a solution";
}

}  // namespace detail

std::string CapacityCertificate::csv() const {
    std::string out = "R,LHS,annulus_mass,hoelder_bound,C_hat,tail_mass\n";
    for (const auto& r : rows)
        out += format_number(r.radius) + ',' + format_number(r.lhs) + ',' + format_number(r.annulus_mass) + ',' +
               format_number(r.hoelder_bound) + ',' + format_number(r.c_hat) + ',' + format_number(r.tail_mass) + '\n';
    return out;
}

}  // namespace liouville
