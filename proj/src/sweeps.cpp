#include "windshore/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windshore {

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::RoundTripEfficiency: return "round_trip_efficiency";
        case SweepAxis::ConversionCostReduction: return "conversion_cost_reduction";
        case SweepAxis::DistanceScale: return "distance_scale";
        case SweepAxis::FarmCapacityMw: return "farm_capacity_mw";
    }
    return "?";
}

SweepAxis axis_from_string(const std::string& name) {
    if (name == "round_trip_efficiency" || name == "efficiency")
        return SweepAxis::RoundTripEfficiency;
    if (name == "conversion_cost_reduction" || name == "cost-reduction" ||
        name == "cost_reduction")
        return SweepAxis::ConversionCostReduction;
    if (name == "distance_scale" || name == "distance") return SweepAxis::DistanceScale;
    if (name == "farm_capacity_mw" || name == "capacity") return SweepAxis::FarmCapacityMw;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

CostOverrides CostOverrides::preset(const std::string& name) {
    if (name.empty() || name == "none") return {};
    if (name == "future_halved") return {0.5, 0.5, 0.5};
    throw std::invalid_argument("unknown cost preset: " + name);
}

bool CostOverrides::is_identity() const {
    return electrolyzer_capex_factor == 1.0 && fuel_cell_capex_factor == 1.0 &&
           pipeline_capex_factor == 1.0;
}

std::vector<ValidationIssue> validate_sweep_spec(const SweepSpec& spec) {
    std::vector<ValidationIssue> out;
    if (spec.values.empty()) out.push_back({"sweep.values", "must be nonempty"});
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1])) {
            out.push_back({"sweep.values", "must be strictly increasing"});
            break;
        }
    if (spec.cases.empty()) out.push_back({"sweep.cases", "must name at least one case"});
    for (double v : spec.values) {
        switch (spec.axis) {
            case SweepAxis::RoundTripEfficiency:
                if (!(v > 0.0 && v < 1.0))
                    out.push_back({"sweep.values", "efficiency values must lie in (0,1)"});
                break;
            case SweepAxis::ConversionCostReduction:
                if (!(v >= 0.0 && v < 1.0))
                    out.push_back({"sweep.values", "cost reductions must lie in [0,1)"});
                break;
            case SweepAxis::DistanceScale:
                if (!(v > 0.0)) out.push_back({"sweep.values", "distance scales must be positive"});
                break;
            case SweepAxis::FarmCapacityMw:
                if (!(v >= 0.0)) out.push_back({"sweep.values", "capacities must be nonnegative"});
                break;
        }
        if (!out.empty()) break;
    }
    auto sc = validate_scenario(spec.scenario, spec.catalog);
    out.insert(out.end(), sc.begin(), sc.end());
    auto cc = validate_catalog(spec.catalog);
    out.insert(out.end(), cc.begin(), cc.end());
    return out;
}

void apply_sweep_point(const SweepSpec& spec, double value, Scenario& s, ComponentCatalog& c) {
    s = spec.scenario;
    c = spec.catalog;
    c.electrolyzer.capex_per_unit *= spec.overrides.electrolyzer_capex_factor;
    c.fuel_cell.capex_per_unit *= spec.overrides.fuel_cell_capex_factor;
    c.pipeline_lp.capex_per_km *= spec.overrides.pipeline_capex_factor;
    c.pipeline_hp.capex_per_km *= spec.overrides.pipeline_capex_factor;
    switch (spec.axis) {
        case SweepAxis::RoundTripEfficiency:
            // the electrolyzer side is held fixed; the fuel-cell yield moves
            c.fuel_cell.energy_yield_mwh_per_kg =
                value * c.electrolyzer.energy_intensity_mwh_per_kg;
            break;
        case SweepAxis::ConversionCostReduction:
            c.electrolyzer.capex_per_unit *= 1.0 - value;
            c.fuel_cell.capex_per_unit *= 1.0 - value;
            break;
        case SweepAxis::DistanceScale:
            s.distance_scale = value;
            break;
        case SweepAxis::FarmCapacityMw:
            for (auto& cap : s.farm_capacity_mw) cap = value;
            break;
    }
}

int SweepResult::case_index(CaseId c) const {
    for (std::size_t i = 0; i < spec.cases.size(); ++i)
        if (spec.cases[i] == c) return static_cast<int>(i);
    return -1;
}

const SweepCell* SweepResult::cell(double value, CaseId c) const {
    const int ci = case_index(c);
    if (ci < 0) return nullptr;
    for (std::size_t i = 0; i < spec.values.size(); ++i)
        if (spec.values[i] == value) return &cells[i][ci];
    return nullptr;
}

namespace {

SweepCell run_cell(const SweepSpec& spec, double value, CaseId c) {
    SweepCell cell;
    try {
        Scenario s;
        ComponentCatalog cat;
        apply_sweep_point(spec, value, s, cat);
        SizingOutcome o = optimize_sizing(c, s, cat, spec.day, spec.options);
        cell.ok = true;
        cell.net_benefit_usd = o.net_benefit_usd;
        cell.decision = std::move(o.decision);
        cell.cost = o.cost;
        cell.lifetime_revenue_usd = o.lifetime_revenue_usd;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = std::string("axis=") + to_string(spec.axis) + " value=" +
                     std::to_string(value) + " case=" + to_string(c) + ": " + e.what();
    }
    return cell;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    {
        auto issues = validate_sweep_spec(spec);
        if (!issues.empty())
            throw std::invalid_argument("invalid sweep spec:\n" + format_issues(issues));
    }
    SweepResult out;
    out.spec = spec;
    out.cells.resize(spec.values.size());
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
        out.cells[vi].resize(spec.cases.size());
        for (std::size_t ci = 0; ci < spec.cases.size(); ++ci)
            out.cells[vi][ci] = run_cell(spec, spec.values[vi], spec.cases[ci]);
    }
    // annotate adjacent-point sign flips of every case pair
    for (std::size_t a = 0; a < spec.cases.size(); ++a)
        for (std::size_t b = a + 1; b < spec.cases.size(); ++b) {
            for (std::size_t vi = 0; vi + 1 < spec.values.size(); ++vi) {
                const auto& c0 = out.cells[vi];
                const auto& c1 = out.cells[vi + 1];
                if (!c0[a].ok || !c0[b].ok || !c1[a].ok || !c1[b].ok) continue;
                const double d0 = c0[a].net_benefit_usd - c0[b].net_benefit_usd;
                const double d1 = c1[a].net_benefit_usd - c1[b].net_benefit_usd;
                if (d0 == 0.0 || (d0 < 0.0) == (d1 < 0.0)) continue;
                out.annotations.push_back(
                    {spec.cases[a], spec.cases[b], spec.values[vi], spec.values[vi + 1]});
            }
        }
    return out;
}

std::vector<CrossoverInterval> find_crossover(const SweepResult& result, CaseId a, CaseId b) {
    const int ia = result.case_index(a);
    const int ib = result.case_index(b);
    if (ia < 0 || ib < 0)
        throw std::invalid_argument("find_crossover: case missing from the sweep");
    const auto& spec = result.spec;
    const std::size_t n = spec.values.size();

    auto diff_at_grid = [&](std::size_t i) {
        const auto& row = result.cells[i];
        if (!row[ia].ok || !row[ib].ok)
            throw std::runtime_error("find_crossover: failed cell at value " +
                                     std::to_string(spec.values[i]));
        return row[ia].net_benefit_usd - row[ib].net_benefit_usd;
    };
    auto diff_fresh = [&](double value) {
        Scenario s;
        ComponentCatalog cat;
        apply_sweep_point(spec, value, s, cat);
        const double ba = optimize_sizing(a, s, cat, spec.day, spec.options).net_benefit_usd;
        const double bb = optimize_sizing(b, s, cat, spec.day, spec.options).net_benefit_usd;
        return ba - bb;
    };

    std::vector<CrossoverInterval> out;
    if (n < 2) return out;
    const double span = spec.values.back() - spec.values.front();
    const double width_target = 0.01 * span;

    std::vector<double> diffs(n);
    for (std::size_t i = 0; i < n; ++i) diffs[i] = diff_at_grid(i);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d0 = diffs[i];
        const double d1 = diffs[i + 1];
        if (d0 == 0.0) {
            out.push_back({spec.values[i], spec.values[i], false});
            continue;
        }
        if ((d0 < 0.0) == (d1 < 0.0)) continue;
        double lo = spec.values[i], hi = spec.values[i + 1];
        double dlo = d0;
        while (hi - lo > width_target) {
            const double mid = 0.5 * (lo + hi);
            const double dm = diff_fresh(mid);
            if (dm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((dm < 0.0) == (dlo < 0.0)) {
                lo = mid;
                dlo = dm;
            } else {
                hi = mid;
            }
        }
        out.push_back({lo, hi, false});
    }

    // beyond-grid prediction: gap closing toward an end without flipping
    if (out.empty() && n >= 2) {
        const double dl0 = diffs[n - 2], dl1 = diffs[n - 1];
        if (dl1 != 0.0 && std::abs(dl1) < std::abs(dl0) && (dl0 < 0.0) == (dl1 < 0.0)) {
            const double step = spec.values[n - 1] - spec.values[n - 2];
            const double v = spec.values[n - 1] + dl1 / (dl0 - dl1) * step;
            out.push_back({v, v, true});
        }
        const double df0 = diffs[0], df1 = diffs[1];
        if (df0 != 0.0 && std::abs(df0) < std::abs(df1) && (df0 < 0.0) == (df1 < 0.0)) {
            const double step = spec.values[1] - spec.values[0];
            const double v = spec.values[0] - df0 / (df1 - df0) * step;
            out.push_back({v, v, true});
        }
    }
    return out;
}

ThreeCaseReport compare_cases(const Scenario& s, const ComponentCatalog& c,
                              const DayProfile& day, const SizingOptions& opt) {
    ThreeCaseReport rep;
    for (CaseId cs : {CaseId::Hvdc, CaseId::Hybrid, CaseId::Hp}) {
        CaseReport r;
        r.case_id = cs;
        try {
            r.outcome = optimize_sizing(cs, s, c, day, opt);
            r.ok = true;
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
        }
        rep.cases.push_back(std::move(r));
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rep.cases.size(); ++i)
        if (rep.cases[i].ok) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return rep.cases[x].outcome.net_benefit_usd > rep.cases[y].outcome.net_benefit_usd;
    });
    for (std::size_t i : order) rep.ranking.push_back(rep.cases[i].case_id);
    return rep;
}

}  // namespace windshore
