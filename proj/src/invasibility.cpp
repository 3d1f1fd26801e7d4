#include "pcp/invasibility.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pcp/meanfield.hpp"
#include "pcp/quadrature.hpp"

namespace pcp {

namespace {

logistic::Flow season_flow(const SeasonalParams& p, int species, int season) {
    return {p.birth(species, season), p.death(species, season)};
}

double mean_death(const SeasonalParams& p, int species) {
    return 0.5 * (p.death(species, 1) + p.death(species, 2));
}

double mean_birth(const SeasonalParams& p, int species) {
    return 0.5 * (p.birth(species, 1) + p.birth(species, 2));
}

// Closed-form index plus quadrature cross-check against the resident's
// equilibrium curve.
double index_against_curve(const SeasonalParams& p, int invader,
                           const EquilibriumCurve& resident) {
    const double D = p.D;
    const double b1 = p.birth(invader, 1);
    const double b2 = p.birth(invader, 2);
    const double s1 = resident.season_integral(1);
    const double s2 = resident.season_integral(2);
    const double index = (b1 * (D - s1) + b2 * (D - s2)) / (2.0 * D);

    const double scale = std::max(1.0, std::abs(index));
    const double q1 = adaptive_simpson(
        [&](double t) { return 1.0 - resident.eval(t); }, 0.0, D, 1e-12 * scale);
    const double q2 = adaptive_simpson(
        [&](double t) { return 1.0 - resident.eval(t); }, D, 2.0 * D, 1e-12 * scale);
    const double quad = (b1 * q1 + b2 * q2) / (2.0 * D);
    if (std::abs(index - quad) > 1e-8 * scale)
        throw std::logic_error("invasion_index: closed form and quadrature disagree");
    return index;
}

InvaderResult direction(const SeasonalParams& p, int invader, int resident,
                        bool resident_super, const EquilibriumCurve* curve) {
    InvaderResult out;
    out.invader = invader;
    out.resident = resident;
    out.threshold = mean_death(p, invader);
    out.resident_supercritical = resident_super;
    out.index = resident_super ? index_against_curve(p, invader, *curve)
                               : mean_birth(p, invader);
    out.margin = out.index - out.threshold;
    out.verdict = out.margin > 0.0;
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

double invasion_index(const SeasonalParams& params, int invader, int resident) {
    params.check_species(invader);
    params.check_species(resident);
    if (invader == resident)
        throw std::invalid_argument("invasion_index: invader and resident must differ");
    if (!single_species_survives(params, resident)) return mean_birth(params, invader);
    const EquilibriumCurve curve(resident, season_flow(params, resident, 1),
                                 season_flow(params, resident, 2), params.D);
    return index_against_curve(params, invader, curve);
}

InvasionReport theorem_check(const SeasonalParams& params) {
    if (params.S != 2)
        throw std::invalid_argument("theorem_check: requires a two-species system");
    InvasionReport report;
    report.S = params.S;
    report.D = params.D;
    report.super1 = single_species_survives(params, 1);
    report.super2 = single_species_survives(params, 2);
    report.degenerate = !report.super1 || !report.super2;

    std::optional<EquilibriumCurve> curve1;
    std::optional<EquilibriumCurve> curve2;
    if (report.super1) {
        curve1.emplace(1, season_flow(params, 1, 1), season_flow(params, 1, 2), params.D);
        report.anchors1 = {curve1->p1(), curve1->p2()};
    }
    if (report.super2) {
        curve2.emplace(2, season_flow(params, 2, 1), season_flow(params, 2, 2), params.D);
        report.anchors2 = {curve2->p1(), curve2->p2()};
    }
    report.dir12 = direction(params, 1, 2, report.super2, curve2 ? &*curve2 : nullptr);
    report.dir21 = direction(params, 2, 1, report.super1, curve1 ? &*curve1 : nullptr);
    report.verdict = report.dir12.verdict && report.dir21.verdict;
    return report;
}

std::pair<double, double> anchor_bounds_lhs(const SeasonalParams& params,
                                            const SeasonAnchors& anchors1,
                                            const SeasonAnchors& anchors2) {
    const double lhs1 =
        0.5 * (params.birth(1, 1) * (1.0 - 0.5 * (anchors2.p1 + anchors2.p2)) +
               params.birth(1, 2) * (1.0 - anchors2.p1));
    const double lhs2 =
        0.5 * (params.birth(2, 1) * (1.0 - anchors1.p2) +
               params.birth(2, 2) * (1.0 - 0.5 * (anchors1.p1 + anchors1.p2)));
    return {lhs1, lhs2};
}

AnchorBoundsResult anchor_bounds_check(const SeasonalParams& params,
                                       const InvasionReport& base) {
    if (params.S != 2)
        throw std::invalid_argument("anchor_bounds_check: requires a two-species system");
    AnchorBoundsResult out;
    out.threshold1 = mean_death(params, 1);
    out.threshold2 = mean_death(params, 2);
    out.applicable = params.birth(1, 1) > params.birth(1, 2) &&
                     params.birth(2, 2) > params.birth(2, 1);
    if (!out.applicable) return out; // orientation violated: not applicable

    const auto [lhs1, lhs2] = anchor_bounds_lhs(params, base.anchors1, base.anchors2);
    out.lhs1 = lhs1;
    out.lhs2 = lhs2;
    out.verdict = lhs1 > out.threshold1 && lhs2 > out.threshold2;
    if (out.verdict && !base.verdict)
        throw std::logic_error("anchor_bounds_check: sufficient condition held but invasion check failed");
    return out;
}

std::string report_key_value_text(const InvasionReport& report) {
    std::string s;
    auto put = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    put("species_count", std::to_string(report.S));
    put("season_length", fmt(report.D));
    put("resident_1_supercritical", report.super1 ? "true" : "false");
    put("resident_1_p1", fmt(report.anchors1.p1));
    put("resident_1_p2", fmt(report.anchors1.p2));
    put("resident_2_supercritical", report.super2 ? "true" : "false");
    put("resident_2_p1", fmt(report.anchors2.p1));
    put("resident_2_p2", fmt(report.anchors2.p2));
    for (const InvaderResult* d : {&report.dir12, &report.dir21}) {
        const std::string pre = "invader_" + std::to_string(d->invader);
        put(pre + "_index", fmt(d->index));
        put(pre + "_threshold", fmt(d->threshold));
        put(pre + "_margin", fmt(d->margin));
        put(pre + "_verdict", d->verdict ? "pass" : "fail");
    }
    put("degenerate_resident", report.degenerate ? "true" : "false");
    put("verdict", report.verdict ? "pass" : "fail");
    if (report.anchor_bounds) {
        const auto& ab = *report.anchor_bounds;
        put("anchor_bounds_applicable", ab.applicable ? "true" : "false");
        if (ab.applicable) {
            put("anchor_bounds_lhs_1", fmt(ab.lhs1));
            put("anchor_bounds_threshold_1", fmt(ab.threshold1));
            put("anchor_bounds_lhs_2", fmt(ab.lhs2));
            put("anchor_bounds_threshold_2", fmt(ab.threshold2));
            put("anchor_bounds_verdict", ab.verdict ? "pass" : "fail");
        } else {
            put("anchor_bounds_verdict", "not_applicable");
        }
    }
    return s;
}

std::string report_csv_header() {
    return "S,D,p11,p12,p21,p22,super1,super2,index_1,threshold_1,margin_1,"
           "index_2,threshold_2,margin_2,degenerate,verdict";
}

std::string report_csv_row(const InvasionReport& report) {
    std::string s;
    s += std::to_string(report.S) + "," + fmt(report.D) + ",";
    s += fmt(report.anchors1.p1) + "," + fmt(report.anchors1.p2) + ",";
    s += fmt(report.anchors2.p1) + "," + fmt(report.anchors2.p2) + ",";
    s += std::string(report.super1 ? "1" : "0") + "," + (report.super2 ? "1" : "0") + ",";
    s += fmt(report.dir12.index) + "," + fmt(report.dir12.threshold) + "," + fmt(report.dir12.margin) + ",";
    s += fmt(report.dir21.index) + "," + fmt(report.dir21.threshold) + "," + fmt(report.dir21.margin) + ",";
    s += std::string(report.degenerate ? "1" : "0") + "," + (report.verdict ? "1" : "0");
    return s;
}

} // namespace pcp
