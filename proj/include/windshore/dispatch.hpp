#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "windshore/lp.hpp"
#include "windshore/model.hpp"
#include "windshore/physics.hpp"
#include "windshore/topology.hpp"

namespace windshore {

/// Component capacities handed to the dispatch stage. Line/pipe counts are
/// integral; conversion capacities are continuous so the sizing search can
/// relax them before rounding to unit counts.
struct DispatchSizing {
    std::vector<int> lines_per_farm;          // HVDC, HYBRID
    std::vector<int> lp_pipes_per_farm;       // HP
    int hp_pipes = 0;                         // HYBRID, HP
    std::vector<double> electrolyzer_cap_mw;  // one entry per electrolyzer site
    double fuel_cell_cap_mw = 0.0;
};

/// Inner problem of the planning objective: for fixed sizing, choose hourly
/// flows maximizing one representative day's revenue.
struct DispatchProblem {
    CaseId case_id = CaseId::Hvdc;
    Scenario scenario;
    ComponentCatalog catalog;
    DayProfile day;
    DispatchSizing sizing;
    int segments = 10;     // piecewise-linearization sample count
};

/// Chordal over-estimator of a convex input-for-output curve sampled at
/// equidistant points on [0, x_max]. value() is the max over extended chords,
/// i.e. the piecewise-chordal interpolant.
struct PiecewiseCurve {
    std::vector<double> slope;      // per segment
    std::vector<double> intercept;
    double x_max = 0.0;
    double segment_width = 0.0;

    double value(double x) const;
    bool empty() const { return slope.empty(); }
};

/// One component block of the built LP. Blocks whose physical quantity is a
/// fixed scaling of another block's flow share that block's columns.
struct DispatchBlock {
    enum class Kind { Line, Electrolyzer, FuelCell, Compressor, LpPipe, HpPipe, Storage };
    Kind kind;
    int site = -1;                  // farm index, or -1 for HSC/substation
    std::vector<int> vars;          // LP columns carrying the block's flows
};

struct DispatchLp {
    Lp lp;
    std::vector<DispatchBlock> blocks;

    std::vector<LineLeg> line_legs;                  // [farm]; count 0 => unused
    std::vector<PiecewiseCurve> line_input_curves;   // required p_in as f(p_out)
    std::vector<PipeLeg> lp_pipe_legs;               // [farm] (HP case)
    std::vector<PiecewiseCurve> lp_pipe_pressure;    // inlet pressure as f(total flow)
    std::optional<PipeLeg> hp_pipe_leg;
    PiecewiseCurve hp_pipe_pressure;

    // column indices (-1 where a slot does not exist)
    std::vector<std::vector<int>> line_delta;        // [farm][t*segments+s]
    std::vector<int> hp_flow;                        // [t] (HYBRID)
    std::vector<std::vector<int>> farm_h_flow;       // [farm][t] (HP)
    std::vector<int> store_in, store_out, fc_h_in;   // [t] (hydrogen cases)
    std::vector<std::vector<int>> lp_pipe_pressure_var;  // [farm][t]
    std::vector<int> hp_pipe_pressure_var;           // [t]

    int hours = 0;
    int segments = 0;
    bool with_pressure_vars = true;
};

/// Hourly flows mapped back to physical quantities plus the day's revenue.
struct DispatchResult {
    CaseId case_id = CaseId::Hvdc;
    int hours = 0;
    double dt_hours = 1.0;

    std::vector<double> delivered_mw;                  // [t]
    std::vector<double> storage_kg;                    // [t] end-of-hour level
    double storage_initial_kg = 0.0;

    std::vector<std::vector<double>> line_p_in_mw;     // [farm][t]
    std::vector<std::vector<double>> line_p_out_mw;    // [farm][t]
    std::vector<std::vector<double>> farm_curtail_mw;  // [farm][t]
    std::vector<double> hsc_spill_mw;                  // [t] (HYBRID)

    std::vector<std::vector<double>> electrolyzer_p_mw;   // [site][t]
    std::vector<std::vector<double>> electrolyzer_h_kgph; // [site][t]
    std::vector<std::vector<double>> compressor_p_mw;     // [site][t]
    std::vector<std::vector<double>> lp_pipe_h_kgph;      // [farm][t] (HP)
    std::vector<std::vector<double>> lp_pipe_p_in_bar;    // [farm][t]
    std::vector<double> hp_pipe_h_kgph;                   // [t]
    std::vector<double> hp_pipe_p_in_bar;                 // [t]
    std::vector<double> booster_p_mw;                     // [t] (HP)
    std::vector<double> fuel_cell_h_kgph;                 // [t]
    std::vector<double> fuel_cell_p_mw;                   // [t]
    std::vector<double> storage_in_kgph;                  // [t]
    std::vector<double> storage_out_kgph;                 // [t]

    double day_revenue_usd = 0.0;
    double curtailed_mwh = 0.0;
    int lp_iterations = 0;
};

class DispatchInfeasible : public std::runtime_error {
public:
    DispatchInfeasible(const std::string& what, std::vector<std::string> binding)
        : std::runtime_error(what), binding_constraints(std::move(binding)) {}
    std::vector<std::string> binding_constraints;
};

/// Emits the dispatch LP for a problem: per-case component blocks, node
/// balances for every hour, the storage equality chain, and chordal
/// piecewise-linear over-estimators standing in for the quadratic line-loss
/// and pressure-drop relations. `with_pressure_vars=false` omits the inert
/// pipeline-pressure columns (their chords cannot bind below the effective
/// flow caps); the optimum is unchanged and inner search loops use that form.
DispatchLp build_dispatch(const DispatchProblem& problem, bool with_pressure_vars = true);

/// Solves the built LP and maps the optimum back to physical flows.
/// Deterministic for identical inputs. Throws DispatchInfeasible with the
/// violated constraint names when no feasible dispatch exists.
DispatchResult solve_dispatch(const DispatchProblem& problem,
                              const LpBasis* warm = nullptr,
                              LpBasis* basis_out = nullptr,
                              bool with_pressure_vars = true);

struct TightnessReport {
    double max_line_gap_mw = 0.0;    // worst PWL-vs-quadratic loss gap
    double line_gap_bound_mw = 0.0;  // analytic chord-gap bound, worst leg
    double max_pipe_gap_bar = 0.0;   // worst PWL-vs-true inlet pressure gap
    double pipe_gap_bound_bar = 0.0;
    bool ok = true;
};

/// Confirms the relaxation empirically: for every hour and leg with positive
/// flow the piecewise-linear loss must sit within the chord-gap bound of the
/// true quadratic value for the configured segment count.
TightnessReport verify_tightness(const DispatchResult& result, const DispatchProblem& problem);

}  // namespace windshore
