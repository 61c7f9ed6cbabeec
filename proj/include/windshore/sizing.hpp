#pragma once

#include <vector>

#include "windshore/dispatch.hpp"
#include "windshore/model.hpp"

namespace windshore {

/// Integer build decision per case. Component classes absent from a case stay
/// zero (and their vectors empty where the case has no such sites).
struct SizingDecision {
    std::vector<int> lines_per_farm;
    std::vector<int> lp_pipes_per_farm;
    int hp_pipes = 0;
    std::vector<int> electrolyzers_per_site;
    int fuel_cells = 0;

    bool is_zero() const;
    int total_electrolyzers() const;
    std::vector<int> canonical_vector() const;   // fixed order for tie-breaking
};

struct CostItem {
    double capex_usd = 0.0;
    double annual_opex_usd = 0.0;
};

struct CostBreakdown {
    CostItem lines;          // cables plus converter pairs
    CostItem pipelines_lp;
    CostItem pipelines_hp;
    CostItem electrolyzers;
    CostItem fuel_cells;
    CostItem compressors;
    CostItem storage;
    int years = 0;

    double capex_total() const;
    double annual_opex_total() const;
    double total_usd() const;     // capex + years * annual opex, undiscounted
};

/// Lifetime capital plus operating cost of a decision. Opex accrues as a
/// fixed fraction of capex per year over the horizon, undiscounted.
CostBreakdown total_cost(const SizingDecision& d, CaseId c, const Scenario& s,
                         const ComponentCatalog& cat);

/// Converts an integer decision into the capacities the dispatch stage uses.
DispatchSizing to_dispatch_sizing(const SizingDecision& d, CaseId c,
                                  const ComponentCatalog& cat);

struct NetBenefit {
    double value_usd = 0.0;
    double lifetime_revenue_usd = 0.0;
    CostBreakdown cost;
    DispatchResult dispatch;
};

/// Planning objective for a fixed decision: 365 * years * day revenue minus
/// lifetime cost.
NetBenefit net_benefit(const SizingDecision& d, CaseId c, const Scenario& s,
                       const ComponentCatalog& cat, const DayProfile& day,
                       int segments = 10);

struct SizingOptions {
    int segments = 10;
    int enumeration_slack = 1;        // extra counts above the capacity-implied bound
    double golden_tol_frac = 0.001;   // of farm capacity, per coordinate
    int max_coordinate_passes = 3;
    int threads = 0;                  // 0 = hardware concurrency
};

struct SizingOutcome {
    SizingDecision decision;
    double net_benefit_usd = 0.0;
    double lifetime_revenue_usd = 0.0;
    CostBreakdown cost;
    DispatchResult dispatch;
    long dispatch_solves = 0;
};

/// Two-level search for the best build: exact enumeration of line/pipe counts
/// crossed with a continuous coordinate search (golden section) over
/// conversion capacities, rounded to unit counts at the end. Ties break
/// toward smaller capex, then the lexicographically smaller decision vector.
SizingOutcome optimize_sizing(CaseId c, const Scenario& s, const ComponentCatalog& cat,
                              const DayProfile& day, const SizingOptions& opt = {});

}  // namespace windshore
