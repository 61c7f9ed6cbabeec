#pragma once

#include <stdexcept>

#include "windshore/model.hpp"

namespace windshore {

/// One bundle of parallel DC lines between two nodes.
struct LineLeg {
    double distance_km = 0.0;
    double resistance_ohm_per_km = 0.0;
    double voltage_kv = 0.0;
    double converter_eff = 1.0;
    int count = 0;
    double p_lim_mw = 0.0;          // per line
    double loss_coeff = 1000.0;
};

/// One bundle of parallel pipelines between two nodes.
struct PipeLeg {
    double distance_km = 0.0;
    double diameter_m = 0.0;
    double outlet_pressure_bar = 0.0;
    double max_inlet_pressure_bar = 0.0;
    int count = 0;
    double h_lim_kgph = 0.0;        // per pipeline rating
    GasProperties gas;
    double weymouth_coeff = 5007.7;
};

struct StorageState {
    double level_kg = 0.0;
    double min_kg = 0.0;
    double max_kg = 0.0;
    double dt_hours = 1.0;
};

class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadratic-loss coefficient of a line bundle: loss_mw = k * p_out_mw^2.
double line_loss_coefficient(const LineLeg& leg);

/// Power received at the far end of a line bundle for a given injection,
/// the nonnegative root of the steady-state DC flow relation, capped at the
/// bundle transfer limit.
double hvdc_receive(const LineLeg& leg, double p_in_mw);

/// Injection required to receive `p_out_mw` (forward evaluation of the flow
/// relation). Companion of hvdc_receive; exact inverse below the cap.
double hvdc_send(const LineLeg& leg, double p_out_mw);

/// Electric power drawn by electrolyzers producing `h_out_kgph`.
double electrolyzer_power(double cp_e_mwh_per_kg, double h_out_kgph);

/// Electric power yielded by fuel cells consuming `h_in_kgph`.
double fuel_cell_power(double cp_fc_mwh_per_kg, double h_in_kgph);

/// Electric power drawn by a compressor bank moving `h_kgph`.
double compressor_power(double cp_c_mwh_per_kg, double h_kgph);

struct FrictionResult {
    double lambda;
    double residual;
    int iterations;
};

/// Darcy friction factor from the Colebrook-White relation, solved by damped
/// fixed-point iteration on 1/sqrt(lambda). Requires Re > 4000; residual of
/// the implicit equation is below 1e-8 on success.
double friction_factor(double reynolds, double relative_roughness);
FrictionResult friction_factor_detail(double reynolds, double relative_roughness);

/// Hydrogen compressibility factor, linear in pressure: Z = 1 + alpha * p.
/// The default slope is calibrated near 288 K; pass a different alpha for
/// other operating temperatures.
double compressibility(double pressure_bar, double temperature_k,
                       double alpha_per_bar = 6.4e-4);

/// Inlet pressure required to push `h_kgph` (total over the bundle) through a
/// pipe leg. Strictly increasing in flow; equals the outlet pressure at zero.
double pipeline_inlet_pressure(const PipeLeg& leg, double h_kgph);

/// Same relation without the feasibility check against max_inlet_pressure;
/// used by verifiers that want the raw curve.
double pipeline_inlet_pressure_unchecked(const PipeLeg& leg, double h_kgph);

/// Largest per-pipeline flow whose required inlet pressure stays within the
/// leg's maximum. Inverse of pipeline_inlet_pressure at that pressure.
double pipeline_max_flow(const PipeLeg& leg);

/// Advances the storage level by one step of the balance recursion. Throws on
/// bound violations, reporting direction and magnitude (tolerance 1e-9 kg).
StorageState storage_step(const StorageState& s, double h_in_kgph, double h_out_kgph);

/// Reynolds number of a pipe at a given mass flow.
double pipe_reynolds(double h_kgph, double diameter_m, double viscosity_pa_s);

/// Derives the friction factor (at the class's design flow, i.e. its rating)
/// and the compressibility factor (at the mean of outlet and max inlet
/// pressure) for a pipe class.
GasProperties design_gas_properties(const PipeClassCatalog& pipe, const GasCatalog& gas);

/// Assembles a line leg for farm `k` in the given case from catalog and
/// scenario data (per-case distances, distance_scale applied).
LineLeg make_line_leg(CaseId c, const Scenario& s, const ComponentCatalog& cat,
                      int farm_index, int count);

/// Assembles the farm->HSC low-pressure pipe leg for farm `k` (HP case).
PipeLeg make_lp_pipe_leg(const Scenario& s, const ComponentCatalog& cat,
                         int farm_index, int count);

/// Assembles the HSC->substation high-pressure pipe leg.
PipeLeg make_hp_pipe_leg(const Scenario& s, const ComponentCatalog& cat, int count);

}  // namespace windshore
