#ifndef PCP_INVASIBILITY_HPP
#define PCP_INVASIBILITY_HPP

#include <optional>
#include <string>

#include "pcp/equilibrium.hpp"
#include "pcp/params.hpp"

namespace pcp {

// One direction of the mutual-invadability test: the invader's
// time-averaged effective birth rate against the resident's equilibrium
// curve, compared to the invader's averaged death rate.
struct InvaderResult {
    int invader = 0;
    int resident = 0;
    double index = 0.0;
    double threshold = 0.0;
    double margin = 0.0;
    bool resident_supercritical = false;
    bool verdict = false;
};

// Explicit sufficient condition built from season-start anchors: the
// resident curve is replaced by chord/endpoint bounds, giving a stronger
// (more conservative) inequality per direction. Requires the orientation
// beta11 > beta12 and beta22 > beta21.
struct AnchorBoundsResult {
    bool applicable = false;
    double lhs1 = 0.0;
    double lhs2 = 0.0;
    double threshold1 = 0.0;
    double threshold2 = 0.0;
    bool verdict = false;
};

struct InvasionReport {
    int S = 0;
    double D = 0.0;
    SeasonAnchors anchors1; // lone species 1 at season starts
    SeasonAnchors anchors2;
    bool super1 = false; // lone-species persistence (mean beta > mean delta)
    bool super2 = false;
    InvaderResult dir12; // species 1 invading resident 2
    InvaderResult dir21;
    bool verdict = false;
    bool degenerate = false; // some resident is subcritical alone
    std::optional<AnchorBoundsResult> anchor_bounds;
};

// I_i = (1/2D) int_0^{2D} beta_i(t) (1 - ubar_j(t)) dt, evaluated in
// closed form and cross-checked against adaptive quadrature; a mismatch
// beyond 1e-8 (relative to the magnitude) throws. A subcritical resident
// contributes ubar_j == 0, so the index reduces to the invader's mean
// birth rate exactly.
double invasion_index(const SeasonalParams& params, int invader, int resident);

// Both directions for a two-species system.
InvasionReport theorem_check(const SeasonalParams& params);

// Anchor-bound left-hand sides without the orientation gate (used by the
// gated check and by tests of the underlying bounds).
std::pair<double, double> anchor_bounds_lhs(const SeasonalParams& params,
                                            const SeasonAnchors& anchors1,
                                            const SeasonAnchors& anchors2);

// Gated anchor-bound check; also verifies the implication "anchor-bound
// verdict implies invasion-index verdict" on the same parameters.
AnchorBoundsResult anchor_bounds_check(const SeasonalParams& params,
                                       const InvasionReport& base);

// Report serialization: flat key = value text and CSV row form.
std::string report_key_value_text(const InvasionReport& report);
std::string report_csv_header();
std::string report_csv_row(const InvasionReport& report);

} // namespace pcp

#endif
