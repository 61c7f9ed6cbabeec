#include "windshore/sizing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace windshore {

bool SizingDecision::is_zero() const {
    auto all0 = [](const std::vector<int>& v) {
        return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    };
    return all0(lines_per_farm) && all0(lp_pipes_per_farm) && hp_pipes == 0 &&
           all0(electrolyzers_per_site) && fuel_cells == 0;
}

int SizingDecision::total_electrolyzers() const {
    return std::accumulate(electrolyzers_per_site.begin(), electrolyzers_per_site.end(), 0);
}

std::vector<int> SizingDecision::canonical_vector() const {
    std::vector<int> v;
    v.insert(v.end(), lines_per_farm.begin(), lines_per_farm.end());
    v.insert(v.end(), lp_pipes_per_farm.begin(), lp_pipes_per_farm.end());
    v.push_back(hp_pipes);
    v.insert(v.end(), electrolyzers_per_site.begin(), electrolyzers_per_site.end());
    v.push_back(fuel_cells);
    return v;
}

double CostBreakdown::capex_total() const {
    return lines.capex_usd + pipelines_lp.capex_usd + pipelines_hp.capex_usd +
           electrolyzers.capex_usd + fuel_cells.capex_usd + compressors.capex_usd +
           storage.capex_usd;
}

double CostBreakdown::annual_opex_total() const {
    return lines.annual_opex_usd + pipelines_lp.annual_opex_usd + pipelines_hp.annual_opex_usd +
           electrolyzers.annual_opex_usd + fuel_cells.annual_opex_usd +
           compressors.annual_opex_usd + storage.annual_opex_usd;
}

double CostBreakdown::total_usd() const { return capex_total() + years * annual_opex_total(); }

CostBreakdown total_cost(const SizingDecision& d, CaseId c, const Scenario& s,
                         const ComponentCatalog& cat) {
    CostBreakdown out;
    out.years = s.horizon_years;
    const double scale = s.distance_scale;

    if (c != CaseId::Hp) {
        double capex = 0.0;
        for (std::size_t k = 0; k < d.lines_per_farm.size(); ++k) {
            const double dist = (c == CaseId::Hvdc ? s.dist_farm_substation_km[k]
                                                   : s.dist_farm_hsc_km[k]) *
                                scale;
            capex += d.lines_per_farm[k] *
                     (cat.line.capex_per_km * dist + cat.line.capex_converter_pair);
        }
        out.lines = {capex, capex * cat.line.opex_frac_per_year};
    }
    if (c == CaseId::Hp) {
        double capex = 0.0;
        for (std::size_t k = 0; k < d.lp_pipes_per_farm.size(); ++k)
            capex += d.lp_pipes_per_farm[k] * cat.pipeline_lp.capex_per_km *
                     s.dist_farm_hsc_km[k] * scale;
        out.pipelines_lp = {capex, capex * cat.pipeline_lp.opex_frac};
    }
    if (c != CaseId::Hvdc) {
        const double capex =
            d.hp_pipes * cat.pipeline_hp.capex_per_km * s.dist_hsc_substation_km * scale;
        out.pipelines_hp = {capex, capex * cat.pipeline_hp.opex_frac};

        const double e_capex = d.total_electrolyzers() * cat.electrolyzer.capex_per_unit;
        out.electrolyzers = {e_capex, e_capex * cat.electrolyzer.opex_frac};
        const double f_capex = d.fuel_cells * cat.fuel_cell.capex_per_unit;
        out.fuel_cells = {f_capex, f_capex * cat.fuel_cell.opex_frac};

        // compressor banks sized to the hydrogen capacity of the electrolyzers
        // they serve; the HP-case booster handles the combined flow
        const double h_cap_kgph = d.total_electrolyzers() * cat.electrolyzer.rated_mw /
                                  cat.electrolyzer.energy_intensity_mwh_per_kg;
        double comp_capacity = h_cap_kgph;
        if (c == CaseId::Hp) comp_capacity += h_cap_kgph;  // farm banks + booster
        const double c_capex = comp_capacity * cat.compressor.capex_per_kgph_capacity;
        out.compressors = {c_capex, c_capex * cat.compressor.opex_frac};

        // scenario-fixed storage is paid for once the hydrogen chain exists
        if (d.total_electrolyzers() > 0 || d.fuel_cells > 0) {
            const double s_capex = cat.storage.capex_per_kg * s.storage_capacity_kg;
            out.storage = {s_capex, s_capex * cat.storage.opex_frac};
        }
    }
    return out;
}

DispatchSizing to_dispatch_sizing(const SizingDecision& d, CaseId c,
                                  const ComponentCatalog& cat) {
    DispatchSizing ds;
    ds.lines_per_farm = d.lines_per_farm;
    ds.lp_pipes_per_farm = d.lp_pipes_per_farm;
    ds.hp_pipes = d.hp_pipes;
    ds.electrolyzer_cap_mw.reserve(d.electrolyzers_per_site.size());
    for (int n : d.electrolyzers_per_site)
        ds.electrolyzer_cap_mw.push_back(n * cat.electrolyzer.rated_mw);
    ds.fuel_cell_cap_mw = d.fuel_cells * cat.fuel_cell.rated_mw;
    (void)c;
    return ds;
}

NetBenefit net_benefit(const SizingDecision& d, CaseId c, const Scenario& s,
                       const ComponentCatalog& cat, const DayProfile& day, int segments) {
    DispatchProblem prob;
    prob.case_id = c;
    prob.scenario = s;
    prob.catalog = cat;
    prob.day = day;
    prob.sizing = to_dispatch_sizing(d, c, cat);
    prob.segments = segments;

    NetBenefit nb;
    nb.dispatch = solve_dispatch(prob);
    nb.cost = total_cost(d, c, s, cat);
    nb.lifetime_revenue_usd = 365.0 * s.horizon_years * nb.dispatch.day_revenue_usd;
    nb.value_usd = nb.lifetime_revenue_usd - nb.cost.total_usd();
    return nb;
}

namespace {

struct SearchSpace {
    std::vector<std::vector<int>> ranges;   // per integer slot: candidate counts
    int num_line_slots = 0;                 // leading slots are lines per farm
    int num_lp_slots = 0;                   // then LP pipes per farm
    bool has_hp_slot = false;               // then one HP-pipe slot
    int num_sites = 0;                      // electrolyzer sites (continuous stage)
};

std::vector<int> upto(int n) {
    std::vector<int> v(n + 1);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

SearchSpace make_space(CaseId c, const Scenario& s, const ComponentCatalog& cat, int slack) {
    SearchSpace sp;
    const double cpe = cat.electrolyzer.energy_intensity_mwh_per_kg;
    if (c != CaseId::Hp) {
        sp.num_line_slots = s.farm_count;
        for (int k = 0; k < s.farm_count; ++k) {
            const int need =
                static_cast<int>(std::ceil(s.farm_capacity_mw[k] / cat.line.p_lim_mw - 1e-9));
            sp.ranges.push_back(upto(std::max(need, 0) + slack));
        }
    }
    if (c == CaseId::Hp) {
        sp.num_lp_slots = s.farm_count;
        for (int k = 0; k < s.farm_count; ++k) {
            const double peak_h = s.farm_capacity_mw[k] / cpe;
            const int need =
                static_cast<int>(std::ceil(peak_h / cat.pipeline_lp.h_lim_kgph - 1e-9));
            sp.ranges.push_back(upto(std::max(need, 0) + slack));
        }
    }
    if (c != CaseId::Hvdc) {
        sp.has_hp_slot = true;
        double peak_h = 0.0;
        for (double cap : s.farm_capacity_mw) peak_h += cap / cpe;
        const int need = static_cast<int>(std::ceil(peak_h / cat.pipeline_hp.h_lim_kgph - 1e-9));
        sp.ranges.push_back(upto(std::max(need, 0) + slack));
        sp.num_sites = c == CaseId::Hybrid ? 1 : s.farm_count;
    }
    return sp;
}

SizingDecision decision_from(const SearchSpace& sp, CaseId c, const std::vector<int>& tuple,
                             const std::vector<int>& electrolyzers, int fuel_cells) {
    SizingDecision d;
    int pos = 0;
    for (int i = 0; i < sp.num_line_slots; ++i) d.lines_per_farm.push_back(tuple[pos++]);
    for (int i = 0; i < sp.num_lp_slots; ++i) d.lp_pipes_per_farm.push_back(tuple[pos++]);
    if (sp.has_hp_slot) d.hp_pipes = tuple[pos++];
    if (c != CaseId::Hvdc) {
        d.electrolyzers_per_site = electrolyzers;
        d.fuel_cells = fuel_cells;
    }
    return d;
}

// Continuous-capacity evaluation used inside the coordinate search: dispatch
// revenue minus integer line/pipe costs minus conversion costs prorated by
// fractional unit counts.
class InnerObjective {
public:
    InnerObjective(CaseId c, const Scenario& s, const ComponentCatalog& cat,
                   const DayProfile& day, const SearchSpace& sp, const std::vector<int>& tuple,
                   int segments)
        : case_(c), scenario_(s), cat_(cat), day_(day) {
        prob_.case_id = c;
        prob_.scenario = s;
        prob_.catalog = cat;
        prob_.day = day;
        prob_.segments = segments;
        SizingDecision shell = decision_from(sp, c, tuple, {}, 0);
        prob_.sizing.lines_per_farm = shell.lines_per_farm;
        prob_.sizing.lp_pipes_per_farm = shell.lp_pipes_per_farm;
        prob_.sizing.hp_pipes = shell.hp_pipes;
        prob_.sizing.electrolyzer_cap_mw.assign(std::max(sp.num_sites, 0), 0.0);
        fixed_cost_ = total_cost(shell, c, s, cat).total_usd();
        if (c != CaseId::Hvdc) {
            // storage is a coordinate-independent constant here; the integer
            // costing applies the uses-hydrogen condition
            fixed_cost_ += cat.storage.capex_per_kg * s.storage_capacity_kg *
                           (1.0 + s.horizon_years * cat.storage.opex_frac);
        }
        const double years = s.horizon_years;
        unit_cost_e_ = cat.electrolyzer.capex_per_unit *
                       (1.0 + years * cat.electrolyzer.opex_frac) / cat.electrolyzer.rated_mw;
        // compressor capacity follows electrolyzer hydrogen capacity
        double comp_per_mw = cat.compressor.capex_per_kgph_capacity *
                             (1.0 + years * cat.compressor.opex_frac) /
                             cat.electrolyzer.energy_intensity_mwh_per_kg;
        if (c == CaseId::Hp) comp_per_mw *= 2.0;  // farm banks plus booster
        unit_cost_e_ += c == CaseId::Hvdc ? 0.0 : comp_per_mw;
        unit_cost_fc_ = cat.fuel_cell.capex_per_unit *
                        (1.0 + years * cat.fuel_cell.opex_frac) / cat.fuel_cell.rated_mw;
    }

    double eval(const std::vector<double>& elec_caps, double fc_cap) {
        prob_.sizing.electrolyzer_cap_mw = elec_caps;
        prob_.sizing.fuel_cell_cap_mw = fc_cap;
        LpBasis next;
        DispatchResult r =
            solve_dispatch(prob_, basis_.empty() ? nullptr : &basis_, &next, false);
        basis_ = std::move(next);
        ++solves;
        double cost = fixed_cost_;
        for (double ce : elec_caps) cost += unit_cost_e_ * ce;
        cost += unit_cost_fc_ * fc_cap;
        return 365.0 * scenario_.horizon_years * r.day_revenue_usd - cost;
    }

    // integer-cost evaluation used to pick the final unit counts; shares the
    // warm-start chain
    double eval_integer(const SearchSpace& sp, const std::vector<int>& tuple,
                        const std::vector<int>& elec_units, int fc_units,
                        SizingDecision* out_decision) {
        SizingDecision d = decision_from(sp, case_, tuple, elec_units, fc_units);
        prob_.sizing = to_dispatch_sizing(d, case_, cat_);
        LpBasis next;
        DispatchResult r =
            solve_dispatch(prob_, basis_.empty() ? nullptr : &basis_, &next, false);
        basis_ = std::move(next);
        ++solves;
        const double value = 365.0 * scenario_.horizon_years * r.day_revenue_usd -
                             total_cost(d, case_, scenario_, cat_).total_usd();
        if (out_decision) *out_decision = std::move(d);
        return value;
    }

    long solves = 0;

private:
    CaseId case_;
    const Scenario& scenario_;
    const ComponentCatalog& cat_;
    const DayProfile& day_;
    DispatchProblem prob_;
    LpBasis basis_;
    double fixed_cost_ = 0.0;
    double unit_cost_e_ = 0.0;
    double unit_cost_fc_ = 0.0;
};

// Golden-section maximization of a unimodal objective on [lo, hi].
double golden_max(double lo, double hi, double tol, const std::function<double(double)>& f,
                  double* best_val) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    if (f1 >= f2) {
        if (best_val) *best_val = f1;
        return x1;
    }
    if (best_val) *best_val = f2;
    return x2;
}

struct TupleOutcome {
    SizingDecision decision;
    double benefit = 0.0;
    long solves = 0;
};

TupleOutcome evaluate_tuple(CaseId c, const Scenario& s, const ComponentCatalog& cat,
                            const DayProfile& day, const SearchSpace& sp,
                            const std::vector<int>& tuple, const SizingOptions& opt) {
    TupleOutcome out;
    InnerObjective obj(c, s, cat, day, sp, tuple, opt.segments);

    if (c == CaseId::Hvdc) {
        SizingDecision d;
        out.benefit = obj.eval_integer(sp, tuple, {}, 0, &d);
        out.decision = std::move(d);
        out.solves = obj.solves;
        return out;
    }

    const int sites = sp.num_sites;
    const double cpfc = cat.fuel_cell.energy_yield_mwh_per_kg;
    const double dt = day.dt_hours;

    // coordinate upper bounds
    std::vector<double> e_ub(sites, 0.0);
    if (c == CaseId::Hybrid) {
        bool any_lines = false;
        for (int k = 0; k < sp.num_line_slots; ++k) any_lines |= tuple[k] > 0;
        if (any_lines)
            for (double cap : s.farm_capacity_mw) e_ub[0] += cap;
    } else {
        for (int k = 0; k < sites; ++k) {
            e_ub[k] = s.farm_capacity_mw[k];
            if (tuple[k] == 0) e_ub[k] = 0.0;  // no LP pipes out of this farm
        }
    }
    const int hp_count = sp.has_hp_slot ? tuple[sp.ranges.size() - 1] : 0;
    if (hp_count == 0)
        for (auto& v : e_ub) v = 0.0;

    double hp_flow_cap = hp_count * cat.pipeline_hp.h_lim_kgph;
    double fc_ub = cpfc * (hp_flow_cap + (s.storage_capacity_kg - s.storage_min_kg) / dt);
    if (hp_count == 0) fc_ub = 0.0;

    double cap_scale = 0.0;
    for (double cap : s.farm_capacity_mw) cap_scale = std::max(cap_scale, cap);
    const double tol = std::max(opt.golden_tol_frac * cap_scale, 1e-6);

    std::vector<double> e_caps(sites);
    for (int i = 0; i < sites; ++i) e_caps[i] = e_ub[i];
    double fc_cap = fc_ub;
    double best = obj.eval(e_caps, fc_cap);

    for (int pass = 0; pass < opt.max_coordinate_passes; ++pass) {
        const double before = best;
        for (int i = 0; i < sites; ++i) {
            if (e_ub[i] <= 0.0) {
                e_caps[i] = 0.0;
                continue;
            }
            double val = best;
            const double x = golden_max(0.0, e_ub[i], tol,
                                        [&](double v) {
                                            auto caps = e_caps;
                                            caps[i] = v;
                                            return obj.eval(caps, fc_cap);
                                        },
                                        &val);
            e_caps[i] = x;
            best = val;
        }
        if (fc_ub > 0.0) {
            double val = best;
            const double x = golden_max(0.0, fc_ub, tol,
                                        [&](double v) { return obj.eval(e_caps, v); }, &val);
            fc_cap = x;
            best = val;
        }
        if (best - before <= std::max(1e-6 * std::abs(best), 1.0)) break;
    }

    // round capacities up to unit counts, then let each coordinate drop one
    // unit if that pays; full cross product when the combination count is small
    std::vector<int> e_units(sites);
    for (int i = 0; i < sites; ++i)
        e_units[i] = static_cast<int>(std::ceil(e_caps[i] / cat.electrolyzer.rated_mw - 1e-9));
    int fc_units = static_cast<int>(std::ceil(fc_cap / cat.fuel_cell.rated_mw - 1e-9));

    const int coords = sites + 1;
    SizingDecision best_d;
    double best_int = -1e300;
    if (coords <= 2) {
        std::vector<int> fc_cands{fc_units};
        if (fc_units > 0) fc_cands.push_back(fc_units - 1);
        std::vector<std::vector<int>> e_cands{e_units};
        for (int i = 0; i < sites; ++i)
            if (e_units[i] > 0) {
                auto v = e_units;
                v[i] -= 1;
                e_cands.push_back(v);
            }
        for (const auto& eu : e_cands)
            for (int fu : fc_cands) {
                SizingDecision d;
                const double val = obj.eval_integer(sp, tuple, eu, fu, &d);
                if (val > best_int) {
                    best_int = val;
                    best_d = std::move(d);
                }
            }
    } else {
        SizingDecision d;
        best_int = obj.eval_integer(sp, tuple, e_units, fc_units, &d);
        best_d = std::move(d);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i <= sites; ++i) {
                auto eu = best_d.electrolyzers_per_site;
                int fu = best_d.fuel_cells;
                if (i < sites) {
                    if (eu[i] == 0) continue;
                    eu[i] -= 1;
                } else {
                    if (fu == 0) continue;
                    fu -= 1;
                }
                SizingDecision cand;
                const double val = obj.eval_integer(sp, tuple, eu, fu, &cand);
                if (val > best_int) {
                    best_int = val;
                    best_d = std::move(cand);
                    improved = true;
                }
            }
        }
    }
    out.decision = std::move(best_d);
    out.benefit = best_int;
    out.solves = obj.solves;
    return out;
}

bool better(const TupleOutcome& a, const TupleOutcome& b, CaseId c, const Scenario& s,
            const ComponentCatalog& cat) {
    if (a.benefit != b.benefit) return a.benefit > b.benefit;
    const double ca = total_cost(a.decision, c, s, cat).capex_total();
    const double cb = total_cost(b.decision, c, s, cat).capex_total();
    if (ca != cb) return ca < cb;
    return a.decision.canonical_vector() < b.decision.canonical_vector();
}

}  // namespace

SizingOutcome optimize_sizing(CaseId c, const Scenario& s, const ComponentCatalog& cat,
                              const DayProfile& day, const SizingOptions& opt) {
    {
        auto issues = validate_scenario(s, cat);
        auto cat_issues = validate_catalog(cat);
        issues.insert(issues.end(), cat_issues.begin(), cat_issues.end());
        auto day_issues = validate_day(day, s.farm_count, false);
        issues.insert(issues.end(), day_issues.begin(), day_issues.end());
        if (!issues.empty())
            throw std::invalid_argument("invalid sizing inputs:\n" + format_issues(issues));
    }

    const SearchSpace sp = make_space(c, s, cat, opt.enumeration_slack);
    long total_tuples = 1;
    for (const auto& r : sp.ranges) total_tuples *= static_cast<long>(r.size());

    std::vector<std::vector<int>> tuples;
    tuples.reserve(total_tuples);
    for (long i = 0; i < total_tuples; ++i) {
        std::vector<int> t(sp.ranges.size());
        long rem = i;
        for (int slot = static_cast<int>(sp.ranges.size()) - 1; slot >= 0; --slot) {
            const auto& r = sp.ranges[slot];
            t[slot] = r[rem % r.size()];
            rem /= r.size();
        }
        tuples.push_back(std::move(t));
    }
    if (tuples.empty()) tuples.push_back({});

    std::vector<TupleOutcome> results(tuples.size());
    int threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(tuples.size())));

    if (threads == 1) {
        for (std::size_t i = 0; i < tuples.size(); ++i)
            results[i] = evaluate_tuple(c, s, cat, day, sp, tuples[i], opt);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tuples.size()) return;
                results[i] = evaluate_tuple(c, s, cat, day, sp, tuples[i], opt);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // ordered reduction keeps the outcome independent of thread scheduling
    std::size_t best = 0;
    long solves = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        solves += results[i].solves;
        if (i > 0 && better(results[i], results[best], c, s, cat)) best = i;
    }

    SizingOutcome out;
    NetBenefit nb = net_benefit(results[best].decision, c, s, cat, day, opt.segments);
    out.decision = results[best].decision;
    out.net_benefit_usd = nb.value_usd;
    out.lifetime_revenue_usd = nb.lifetime_revenue_usd;
    out.cost = nb.cost;
    out.dispatch = std::move(nb.dispatch);
    out.dispatch_solves = solves + 1;
    return out;
}

}  // namespace windshore
