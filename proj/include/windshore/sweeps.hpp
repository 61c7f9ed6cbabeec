#pragma once

#include <optional>
#include <string>
#include <vector>

#include "windshore/sizing.hpp"

namespace windshore {

enum class SweepAxis { RoundTripEfficiency, ConversionCostReduction, DistanceScale, FarmCapacityMw };

const char* to_string(SweepAxis a);
SweepAxis axis_from_string(const std::string& name);

/// Multiplicative cost adjustments applied to the base catalog before the
/// axis transformation. The "future_halved" preset halves electrolyzer, fuel
/// cell and hydrogen pipeline capex.
struct CostOverrides {
    double electrolyzer_capex_factor = 1.0;
    double fuel_cell_capex_factor = 1.0;
    double pipeline_capex_factor = 1.0;

    static CostOverrides preset(const std::string& name);
    bool is_identity() const;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::RoundTripEfficiency;
    std::vector<double> values;          // strictly increasing
    Scenario scenario;
    ComponentCatalog catalog;
    DayProfile day;
    std::vector<CaseId> cases;
    CostOverrides overrides;
    SizingOptions options;
};

std::vector<ValidationIssue> validate_sweep_spec(const SweepSpec& spec);

/// Applies overrides then the axis transformation for one grid value.
void apply_sweep_point(const SweepSpec& spec, double value, Scenario& s, ComponentCatalog& c);

struct SweepCell {
    bool ok = false;
    std::string error;
    double net_benefit_usd = 0.0;
    SizingDecision decision;
    CostBreakdown cost;
    double lifetime_revenue_usd = 0.0;
};

struct CrossoverAnnotation {
    CaseId case_a;
    CaseId case_b;
    double lo = 0.0;       // bracketing grid interval where the benefit gap flips
    double hi = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<std::vector<SweepCell>> cells;     // [value][case]
    std::vector<CrossoverAnnotation> annotations;  // unrefined grid brackets

    const SweepCell* cell(double value, CaseId c) const;
    int case_index(CaseId c) const;
};

/// Runs the whole grid. Per-cell failures are recorded with their coordinates
/// and do not abort the remaining cells.
SweepResult run_sweep(const SweepSpec& spec);

struct CrossoverInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool extrapolated = false;   // predicted beyond the grid, not refined
};

/// Brackets every sign change of benefit(a) - benefit(b) along the axis and
/// refines each by bisection to 1% of the axis span. When the gap shrinks
/// monotonically toward a grid boundary without flipping, the linear
/// extrapolation beyond the grid is reported separately (flagged, unrefined).
std::vector<CrossoverInterval> find_crossover(const SweepResult& result, CaseId a, CaseId b);

struct CaseReport {
    CaseId case_id;
    bool ok = false;
    std::string error;
    SizingOutcome outcome;
};

struct ThreeCaseReport {
    std::vector<CaseReport> cases;       // HVDC, HYBRID, HP order
    std::vector<CaseId> ranking;         // by net benefit, best first
};

/// Sizes all three topologies on the same inputs and ranks them.
ThreeCaseReport compare_cases(const Scenario& s, const ComponentCatalog& c,
                              const DayProfile& day, const SizingOptions& opt = {});

}  // namespace windshore
