#include "windshore/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace windshore {

double PiecewiseCurve::value(double x) const {
    if (slope.empty()) return 0.0;
    double best = slope[0] * x + intercept[0];
    for (std::size_t s = 1; s < slope.size(); ++s)
        best = std::max(best, slope[s] * x + intercept[s]);
    return best;
}

namespace {

PiecewiseCurve chord_curve(double x_max, int segments, const std::function<double(double)>& f) {
    PiecewiseCurve c;
    if (!(x_max > 0.0)) return c;
    c.x_max = x_max;
    c.segment_width = x_max / segments;
    double x0 = 0.0;
    double f0 = f(0.0);
    for (int s = 1; s <= segments; ++s) {
        const double x1 = x_max * s / segments;
        const double f1 = f(x1);
        const double slope = (f1 - f0) / (x1 - x0);
        c.slope.push_back(slope);
        c.intercept.push_back(f0 - slope * x0);
        x0 = x1;
        f0 = f1;
    }
    return c;
}

double effective_pipe_limit(const PipeLeg& leg) {
    return std::min(leg.h_lim_kgph, pipeline_max_flow(leg));
}

std::string var_name(const char* base, int a, int b = -1) {
    std::string s(base);
    s += "_" + std::to_string(a);
    if (b >= 0) s += "_" + std::to_string(b);
    return s;
}

struct BuilderContext {
    const DispatchProblem& p;
    int T;
    int S;
    double cpe, cpfc, cpc;
};

void add_pressure_block(DispatchLp& out, const PiecewiseCurve& curve, const PipeLeg& leg,
                        const std::vector<std::vector<int>>& flow_terms_per_hour,
                        std::vector<int>& pressure_vars, const char* tag) {
    // p_t >= chord(flow_t) for every chord; p bounded by the pressure envelope.
    Lp& lp = out.lp;
    const int T = out.hours;
    pressure_vars.assign(T, -1);
    if (curve.empty()) return;
    for (int t = 0; t < T; ++t) {
        pressure_vars[t] = lp.add_var(var_name(tag, t), leg.outlet_pressure_bar,
                                      leg.max_inlet_pressure_bar, 0.0);
    }
    for (int t = 0; t < T; ++t) {
        for (std::size_t s = 0; s < curve.slope.size(); ++s) {
            Lp::Row row;
            row.name = var_name((std::string(tag) + "_chord").c_str(), t, static_cast<int>(s));
            row.idx.push_back(pressure_vars[t]);
            row.val.push_back(1.0);
            for (int v : flow_terms_per_hour[t]) {
                row.idx.push_back(v);
                row.val.push_back(-curve.slope[s]);
            }
            row.lo = curve.intercept[s];
            row.hi = Lp::kInf;
            lp.add_row(std::move(row));
        }
    }
}

}  // namespace

DispatchLp build_dispatch(const DispatchProblem& problem, bool with_pressure_vars) {
    const auto& sc = problem.scenario;
    const auto& cat = problem.catalog;
    const int K = sc.farm_count;
    const int T = problem.day.hours();
    const int S = std::max(problem.segments, 2);
    const double dt = problem.day.dt_hours;
    const double cpe = cat.electrolyzer.energy_intensity_mwh_per_kg;
    const double cpfc = cat.fuel_cell.energy_yield_mwh_per_kg;
    const double cpc = cat.compressor.energy_per_kg_mwh;
    const CaseId cs = problem.case_id;

    DispatchLp out;
    out.hours = T;
    out.segments = S;
    out.with_pressure_vars = with_pressure_vars;
    Lp& lp = out.lp;

    auto available = [&](int k, int t) {
        return sc.farm_capacity_mw[k] * problem.day.wind_capacity_factor[k][t];
    };

    // --- electric line legs (HVDC, HYBRID) -------------------------------
    const bool has_lines = cs != CaseId::Hp;
    out.line_legs.resize(K);
    out.line_input_curves.resize(K);
    out.line_delta.assign(K, {});
    if (has_lines) {
        for (int k = 0; k < K; ++k) {
            const int n = k < static_cast<int>(problem.sizing.lines_per_farm.size())
                              ? problem.sizing.lines_per_farm[k]
                              : 0;
            out.line_legs[k] = make_line_leg(cs, sc, cat, k, n);
            if (n < 1) continue;
            const LineLeg& leg = out.line_legs[k];
            const double cap = n * leg.p_lim_mw;
            out.line_input_curves[k] =
                chord_curve(cap, S, [&](double x) { return hvdc_send(leg, x); });
            out.line_delta[k].assign(T * S, -1);
        }
        // delivered power is sold directly only in the HVDC case
        for (int k = 0; k < K; ++k) {
            if (out.line_input_curves[k].empty()) continue;
            const double width = out.line_input_curves[k].segment_width;
            for (int t = 0; t < T; ++t)
                for (int s = 0; s < S; ++s) {
                    const double price =
                        cs == CaseId::Hvdc ? problem.day.lmp_usd_per_mwh[t] * dt : 0.0;
                    out.line_delta[k][t * S + s] =
                        lp.add_var(var_name("dl", k, t * S + s), 0.0, width, price);
                }
        }
    }

    // --- hydrogen production and transport -------------------------------
    double hp_cap_total = 0.0;
    if (cs != CaseId::Hvdc) {
        PipeLeg hp_leg = make_hp_pipe_leg(sc, cat, problem.sizing.hp_pipes);
        if (problem.sizing.hp_pipes >= 1)
            hp_cap_total = problem.sizing.hp_pipes * effective_pipe_limit(hp_leg);
        out.hp_pipe_leg = hp_leg;
        if (hp_cap_total > 0.0)
            out.hp_pipe_pressure = chord_curve(hp_cap_total, S, [&](double h) {
                return pipeline_inlet_pressure_unchecked(hp_leg, h);
            });
    }

    if (cs == CaseId::Hybrid) {
        const double cap_e =
            problem.sizing.electrolyzer_cap_mw.empty() ? 0.0 : problem.sizing.electrolyzer_cap_mw[0];
        const double xcap = std::min(hp_cap_total, std::max(cap_e, 0.0) / cpe);
        out.hp_flow.resize(T);
        for (int t = 0; t < T; ++t)
            out.hp_flow[t] = lp.add_var(var_name("hx", t), 0.0, xcap, 0.0);
    }

    if (cs == CaseId::Hp) {
        out.lp_pipe_legs.resize(K);
        out.lp_pipe_pressure.resize(K);
        out.farm_h_flow.assign(K, {});
        for (int k = 0; k < K; ++k) {
            const int n = k < static_cast<int>(problem.sizing.lp_pipes_per_farm.size())
                              ? problem.sizing.lp_pipes_per_farm[k]
                              : 0;
            out.lp_pipe_legs[k] = make_lp_pipe_leg(sc, cat, k, n);
            double zcap = 0.0;
            if (n >= 1) zcap = n * effective_pipe_limit(out.lp_pipe_legs[k]);
            const double cap_e = k < static_cast<int>(problem.sizing.electrolyzer_cap_mw.size())
                                     ? problem.sizing.electrolyzer_cap_mw[k]
                                     : 0.0;
            zcap = std::min(zcap, std::max(cap_e, 0.0) / cpe);
            if (zcap > 0.0)
                out.lp_pipe_pressure[k] = chord_curve(zcap, S, [&](double h) {
                    return pipeline_inlet_pressure_unchecked(out.lp_pipe_legs[k], h);
                });
            out.farm_h_flow[k].resize(T);
            for (int t = 0; t < T; ++t)
                out.farm_h_flow[k][t] = lp.add_var(var_name("hz", k, t), 0.0, zcap, 0.0);
        }
    }

    // --- substation: storage and fuel cells ------------------------------
    if (cs != CaseId::Hvdc) {
        const double fc_h_cap = std::max(problem.sizing.fuel_cell_cap_mw, 0.0) / cpfc;
        double inflow_cap = 0.0;
        if (cs == CaseId::Hybrid) {
            inflow_cap = out.hp_flow.empty() ? 0.0 : lp.ub[out.hp_flow[0]];
        } else {
            for (int k = 0; k < K; ++k) inflow_cap += lp.ub[out.farm_h_flow[k][0]];
            inflow_cap = std::min(inflow_cap, hp_cap_total);
        }
        out.store_in.resize(T);
        out.store_out.resize(T);
        out.fc_h_in.resize(T);
        for (int t = 0; t < T; ++t)
            out.store_in[t] = lp.add_var(var_name("si", t), 0.0, inflow_cap, 0.0);
        for (int t = 0; t < T; ++t)
            out.store_out[t] = lp.add_var(var_name("so", t), 0.0, fc_h_cap, 0.0);
        for (int t = 0; t < T; ++t)
            out.fc_h_in[t] = lp.add_var(var_name("hf", t), 0.0, fc_h_cap,
                                        problem.day.lmp_usd_per_mwh[t] * cpfc * dt);
    }

    // --- rows -------------------------------------------------------------
    // farm energy balance: transmitted (or converted) power cannot exceed wind
    for (int k = 0; k < K; ++k) {
        if (cs == CaseId::Hp) {
            Lp::Row row;
            for (int t = 0; t < T; ++t) {
                row = {};
                row.name = var_name("farm", k, t);
                row.idx.push_back(out.farm_h_flow[k][t]);
                row.val.push_back(cpe + 2.0 * cpc);  // electrolysis + LP stage + booster share
                row.lo = -Lp::kInf;
                row.hi = available(k, t);
                lp.add_row(std::move(row));
            }
        } else if (!out.line_input_curves[k].empty()) {
            const PiecewiseCurve& curve = out.line_input_curves[k];
            for (int t = 0; t < T; ++t) {
                Lp::Row row;
                row.name = var_name("farm", k, t);
                for (int s = 0; s < S; ++s) {
                    row.idx.push_back(out.line_delta[k][t * S + s]);
                    row.val.push_back(curve.slope[s]);  // marginal input per unit delivered
                }
                row.lo = -Lp::kInf;
                row.hi = available(k, t);
                lp.add_row(std::move(row));
            }
        }
    }

    if (cs == CaseId::Hybrid) {
        // HSC bus: electrolyzer + compressor draw cannot exceed line arrivals
        for (int t = 0; t < T; ++t) {
            Lp::Row row;
            row.name = var_name("hsc", t);
            row.idx.push_back(out.hp_flow[t]);
            row.val.push_back(cpe + cpc);
            for (int k = 0; k < K; ++k) {
                if (out.line_input_curves[k].empty()) continue;
                for (int s = 0; s < S; ++s) {
                    row.idx.push_back(out.line_delta[k][t * S + s]);
                    row.val.push_back(-1.0);
                }
            }
            row.lo = -Lp::kInf;
            row.hi = 0.0;
            lp.add_row(std::move(row));
        }
    }
    if (cs == CaseId::Hp) {
        for (int t = 0; t < T; ++t) {
            Lp::Row row;
            row.name = var_name("hpcap", t);
            for (int k = 0; k < K; ++k) {
                row.idx.push_back(out.farm_h_flow[k][t]);
                row.val.push_back(1.0);
            }
            row.lo = -Lp::kInf;
            row.hi = hp_cap_total;
            lp.add_row(std::move(row));
        }
    }

    if (cs != CaseId::Hvdc) {
        // substation hydrogen balance: pipeline arrivals plus storage draw
        // equal storage charge plus fuel-cell intake
        for (int t = 0; t < T; ++t) {
            Lp::Row row;
            row.name = var_name("h2bal", t);
            row.idx.push_back(out.fc_h_in[t]);
            row.val.push_back(1.0);
            row.idx.push_back(out.store_in[t]);
            row.val.push_back(1.0);
            row.idx.push_back(out.store_out[t]);
            row.val.push_back(-1.0);
            if (cs == CaseId::Hybrid) {
                row.idx.push_back(out.hp_flow[t]);
                row.val.push_back(-1.0);
            } else {
                for (int k = 0; k < K; ++k) {
                    row.idx.push_back(out.farm_h_flow[k][t]);
                    row.val.push_back(-1.0);
                }
            }
            row.lo = 0.0;
            row.hi = 0.0;
            lp.add_row(std::move(row));
        }
        // storage level window, cumulative form; the final hour also carries
        // the cyclic condition (end level at least the initial level)
        for (int t = 0; t < T; ++t) {
            Lp::Row row;
            row.name = var_name("store", t);
            for (int u = 0; u <= t; ++u) {
                row.idx.push_back(out.store_in[u]);
                row.val.push_back(dt);
                row.idx.push_back(out.store_out[u]);
                row.val.push_back(-dt);
            }
            row.lo = sc.storage_min_kg - sc.storage_initial_kg;
            row.hi = sc.storage_capacity_kg - sc.storage_initial_kg;
            if (t == T - 1) row.lo = std::max(row.lo, 0.0);
            lp.add_row(std::move(row));
        }
    }

    // --- pipeline pressure blocks (inert below the effective caps) --------
    if (with_pressure_vars && cs != CaseId::Hvdc) {
        if (cs == CaseId::Hp) {
            out.lp_pipe_pressure_var.assign(K, {});
            for (int k = 0; k < K; ++k) {
                std::vector<std::vector<int>> terms(T);
                for (int t = 0; t < T; ++t) terms[t] = {out.farm_h_flow[k][t]};
                add_pressure_block(out, out.lp_pipe_pressure[k], out.lp_pipe_legs[k], terms,
                                   out.lp_pipe_pressure_var[k],
                                   ("plp_" + std::to_string(k)).c_str());
            }
        }
        if (out.hp_pipe_leg && !out.hp_pipe_pressure.empty()) {
            std::vector<std::vector<int>> terms(T);
            for (int t = 0; t < T; ++t) {
                if (cs == CaseId::Hybrid)
                    terms[t] = {out.hp_flow[t]};
                else
                    for (int k = 0; k < K; ++k) terms[t].push_back(out.farm_h_flow[k][t]);
            }
            add_pressure_block(out, out.hp_pipe_pressure, *out.hp_pipe_leg, terms,
                               out.hp_pipe_pressure_var, "php");
        }
    }

    // --- block registry ----------------------------------------------------
    auto add_block = [&](DispatchBlock::Kind kind, int site, std::vector<int> vars) {
        out.blocks.push_back({kind, site, std::move(vars)});
    };
    if (has_lines)
        for (int k = 0; k < K; ++k)
            if (!out.line_delta[k].empty())
                add_block(DispatchBlock::Kind::Line, k, out.line_delta[k]);
    if (cs == CaseId::Hybrid) {
        add_block(DispatchBlock::Kind::Electrolyzer, -1, out.hp_flow);
        add_block(DispatchBlock::Kind::Compressor, -1, out.hp_flow);
        add_block(DispatchBlock::Kind::HpPipe, -1, out.hp_flow);
    }
    if (cs == CaseId::Hp) {
        for (int k = 0; k < K; ++k) {
            add_block(DispatchBlock::Kind::Electrolyzer, k, out.farm_h_flow[k]);
            add_block(DispatchBlock::Kind::Compressor, k, out.farm_h_flow[k]);
            add_block(DispatchBlock::Kind::LpPipe, k, out.farm_h_flow[k]);
        }
        add_block(DispatchBlock::Kind::Compressor, -1, {});  // HSC booster
        add_block(DispatchBlock::Kind::HpPipe, -1, {});
    }
    if (cs != CaseId::Hvdc) {
        std::vector<int> storage_vars;
        storage_vars.insert(storage_vars.end(), out.store_in.begin(), out.store_in.end());
        storage_vars.insert(storage_vars.end(), out.store_out.begin(), out.store_out.end());
        add_block(DispatchBlock::Kind::Storage, -1, storage_vars);
        add_block(DispatchBlock::Kind::FuelCell, -1, out.fc_h_in);
    }
    return out;
}

namespace {

double clamp0(double v) { return v < 0.0 ? 0.0 : v; }

}  // namespace

DispatchResult solve_dispatch(const DispatchProblem& problem, const LpBasis* warm,
                              LpBasis* basis_out, bool with_pressure_vars) {
    DispatchLp built = build_dispatch(problem, with_pressure_vars);
    LpSolution sol = solve_lp(built.lp, warm);
    if (sol.status == LpStatus::Infeasible) {
        std::vector<std::string> names;
        for (int r : sol.infeasible_rows) names.push_back(built.lp.rows[r].name);
        throw DispatchInfeasible("dispatch infeasible", std::move(names));
    }
    if (sol.status != LpStatus::Optimal)
        throw std::logic_error("dispatch LP did not reach optimality");
    if (basis_out) *basis_out = sol.basis;

    const auto& sc = problem.scenario;
    const int K = sc.farm_count;
    const int T = built.hours;
    const int S = built.segments;
    const double dt = problem.day.dt_hours;
    const double cpe = problem.catalog.electrolyzer.energy_intensity_mwh_per_kg;
    const double cpfc = problem.catalog.fuel_cell.energy_yield_mwh_per_kg;
    const double cpc = problem.catalog.compressor.energy_per_kg_mwh;
    const CaseId cs = problem.case_id;

    DispatchResult r;
    r.case_id = cs;
    r.hours = T;
    r.dt_hours = dt;
    r.lp_iterations = sol.iterations;
    r.storage_initial_kg = sc.storage_initial_kg;
    r.delivered_mw.assign(T, 0.0);

    auto available = [&](int k, int t) {
        return sc.farm_capacity_mw[k] * problem.day.wind_capacity_factor[k][t];
    };

    if (cs != CaseId::Hp) {
        r.line_p_in_mw.assign(K, std::vector<double>(T, 0.0));
        r.line_p_out_mw.assign(K, std::vector<double>(T, 0.0));
        r.farm_curtail_mw.assign(K, std::vector<double>(T, 0.0));
        for (int k = 0; k < K; ++k) {
            const auto& curve = built.line_input_curves[k];
            for (int t = 0; t < T; ++t) {
                double out = 0.0;
                if (!curve.empty())
                    for (int s = 0; s < S; ++s) out += sol.x[built.line_delta[k][t * S + s]];
                // physical injection is the chordal input for the delivered
                // power; any out-of-order segment fill in the LP maps to the
                // same physical point
                const double in = curve.empty() ? 0.0 : curve.value(out);
                r.line_p_out_mw[k][t] = out;
                r.line_p_in_mw[k][t] = in;
                r.farm_curtail_mw[k][t] = clamp0(available(k, t) - in);
                if (cs == CaseId::Hvdc) r.delivered_mw[t] += out;
            }
        }
    }

    if (cs == CaseId::Hp) {
        r.farm_curtail_mw.assign(K, std::vector<double>(T, 0.0));
        r.lp_pipe_h_kgph.assign(K, std::vector<double>(T, 0.0));
        r.lp_pipe_p_in_bar.assign(K, std::vector<double>(T, 0.0));
        r.electrolyzer_p_mw.assign(K, std::vector<double>(T, 0.0));
        r.electrolyzer_h_kgph.assign(K, std::vector<double>(T, 0.0));
        r.compressor_p_mw.assign(K, std::vector<double>(T, 0.0));
        r.booster_p_mw.assign(T, 0.0);
        r.hp_pipe_h_kgph.assign(T, 0.0);
        r.hp_pipe_p_in_bar.assign(T, 0.0);
        for (int k = 0; k < K; ++k) {
            for (int t = 0; t < T; ++t) {
                const double z = sol.x[built.farm_h_flow[k][t]];
                r.lp_pipe_h_kgph[k][t] = z;
                r.lp_pipe_p_in_bar[k][t] = built.lp_pipe_pressure[k].empty()
                                               ? built.lp_pipe_legs[k].outlet_pressure_bar
                                               : built.lp_pipe_pressure[k].value(z);
                r.electrolyzer_h_kgph[k][t] = z;
                r.electrolyzer_p_mw[k][t] = cpe * z;
                r.compressor_p_mw[k][t] = cpc * z;
                r.farm_curtail_mw[k][t] = clamp0(available(k, t) - (cpe + 2.0 * cpc) * z);
                r.hp_pipe_h_kgph[t] += z;
            }
        }
        for (int t = 0; t < T; ++t) {
            r.booster_p_mw[t] = cpc * r.hp_pipe_h_kgph[t];
            r.hp_pipe_p_in_bar[t] = built.hp_pipe_pressure.empty()
                                        ? (built.hp_pipe_leg ? built.hp_pipe_leg->outlet_pressure_bar : 0.0)
                                        : built.hp_pipe_pressure.value(r.hp_pipe_h_kgph[t]);
        }
    }

    if (cs == CaseId::Hybrid) {
        r.hsc_spill_mw.assign(T, 0.0);
        r.hp_pipe_h_kgph.assign(T, 0.0);
        r.hp_pipe_p_in_bar.assign(T, 0.0);
        r.electrolyzer_p_mw.assign(1, std::vector<double>(T, 0.0));
        r.electrolyzer_h_kgph.assign(1, std::vector<double>(T, 0.0));
        r.compressor_p_mw.assign(1, std::vector<double>(T, 0.0));
        for (int t = 0; t < T; ++t) {
            const double x = sol.x[built.hp_flow[t]];
            r.hp_pipe_h_kgph[t] = x;
            r.hp_pipe_p_in_bar[t] = built.hp_pipe_pressure.empty()
                                        ? (built.hp_pipe_leg ? built.hp_pipe_leg->outlet_pressure_bar : 0.0)
                                        : built.hp_pipe_pressure.value(x);
            r.electrolyzer_h_kgph[0][t] = x;
            r.electrolyzer_p_mw[0][t] = cpe * x;
            r.compressor_p_mw[0][t] = cpc * x;
            double arrivals = 0.0;
            for (int k = 0; k < K; ++k) arrivals += r.line_p_out_mw[k][t];
            r.hsc_spill_mw[t] = clamp0(arrivals - (cpe + cpc) * x);
        }
    }

    if (cs != CaseId::Hvdc) {
        r.storage_in_kgph.assign(T, 0.0);
        r.storage_out_kgph.assign(T, 0.0);
        r.fuel_cell_h_kgph.assign(T, 0.0);
        r.fuel_cell_p_mw.assign(T, 0.0);
        r.storage_kg.assign(T, 0.0);
        double level = sc.storage_initial_kg;
        for (int t = 0; t < T; ++t) {
            r.storage_in_kgph[t] = sol.x[built.store_in[t]];
            r.storage_out_kgph[t] = sol.x[built.store_out[t]];
            r.fuel_cell_h_kgph[t] = sol.x[built.fc_h_in[t]];
            r.fuel_cell_p_mw[t] = cpfc * r.fuel_cell_h_kgph[t];
            r.delivered_mw[t] = r.fuel_cell_p_mw[t];
            level += dt * (r.storage_in_kgph[t] - r.storage_out_kgph[t]);
            r.storage_kg[t] = level;
        }
    } else {
        r.storage_kg.assign(T, sc.storage_initial_kg);
    }

    double revenue = 0.0;
    double curtailed = 0.0;
    for (int t = 0; t < T; ++t) {
        revenue += problem.day.lmp_usd_per_mwh[t] * r.delivered_mw[t] * dt;
        for (int k = 0; k < static_cast<int>(r.farm_curtail_mw.size()); ++k)
            curtailed += r.farm_curtail_mw[k][t] * dt;
        if (!r.hsc_spill_mw.empty()) curtailed += r.hsc_spill_mw[t] * dt;
    }
    r.day_revenue_usd = revenue;
    r.curtailed_mwh = curtailed;
    return r;
}

TightnessReport verify_tightness(const DispatchResult& result, const DispatchProblem& problem) {
    DispatchLp built = build_dispatch(problem, false);
    TightnessReport rep;
    const int T = result.hours;

    for (std::size_t k = 0; k < built.line_input_curves.size(); ++k) {
        const auto& curve = built.line_input_curves[k];
        if (curve.empty()) continue;
        const LineLeg& leg = built.line_legs[k];
        const double kq = line_loss_coefficient(leg);
        const double bound = kq * curve.segment_width * curve.segment_width / 4.0;
        rep.line_gap_bound_mw = std::max(rep.line_gap_bound_mw, bound);
        for (int t = 0; t < T; ++t) {
            const double out = result.line_p_out_mw[k][t];
            if (out <= 0.0) continue;
            const double pwl_loss = leg.converter_eff * result.line_p_in_mw[k][t] - out;
            const double true_loss = kq * out * out;
            const double gap = std::abs(pwl_loss - true_loss);
            rep.max_line_gap_mw = std::max(rep.max_line_gap_mw, gap);
            if (gap > bound + 1e-9 * std::max(1.0, true_loss)) rep.ok = false;
        }
    }

    auto check_pipe = [&](const PiecewiseCurve& curve, const PipeLeg& leg,
                          const std::vector<double>& flow,
                          const std::vector<double>& pressure) {
        if (curve.empty()) return;
        // largest chord-to-curve gap, located by ternary search per segment
        double bound = 0.0;
        for (std::size_t s = 0; s < curve.slope.size(); ++s) {
            double a = curve.segment_width * s;
            double b = a + curve.segment_width;
            auto gap_at = [&](double x) {
                return curve.slope[s] * x + curve.intercept[s] -
                       pipeline_inlet_pressure_unchecked(leg, x);
            };
            for (int it = 0; it < 80; ++it) {
                const double m1 = a + (b - a) / 3.0;
                const double m2 = b - (b - a) / 3.0;
                if (gap_at(m1) < gap_at(m2)) a = m1; else b = m2;
            }
            bound = std::max(bound, gap_at(0.5 * (a + b)));
        }
        rep.pipe_gap_bound_bar = std::max(rep.pipe_gap_bound_bar, bound);
        for (int t = 0; t < T; ++t) {
            if (flow[t] <= 0.0) continue;
            const double gap =
                std::abs(pressure[t] - pipeline_inlet_pressure_unchecked(leg, flow[t]));
            rep.max_pipe_gap_bar = std::max(rep.max_pipe_gap_bar, gap);
            if (gap > bound + 1e-9 * std::max(1.0, pressure[t])) rep.ok = false;
        }
    };

    if (problem.case_id == CaseId::Hp)
        for (std::size_t k = 0; k < built.lp_pipe_legs.size(); ++k)
            check_pipe(built.lp_pipe_pressure[k], built.lp_pipe_legs[k], result.lp_pipe_h_kgph[k],
                       result.lp_pipe_p_in_bar[k]);
    if (problem.case_id != CaseId::Hvdc && built.hp_pipe_leg)
        check_pipe(built.hp_pipe_pressure, *built.hp_pipe_leg, result.hp_pipe_h_kgph,
                   result.hp_pipe_p_in_bar);
    return rep;
}

}  // namespace windshore
