#include "windshore/physics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace windshore {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

double line_loss_coefficient(const LineLeg& leg) {
    if (leg.count < 1) throw PhysicsError("line leg has zero lines");
    const double v2 = leg.voltage_kv * leg.voltage_kv;
    return leg.loss_coeff * leg.distance_km * leg.resistance_ohm_per_km /
           (static_cast<double>(leg.count) * v2);
}

double hvdc_receive(const LineLeg& leg, double p_in_mw) {
    if (p_in_mw < 0.0) throw PhysicsError("negative line input power: " + fmt(p_in_mw));
    if (p_in_mw == 0.0) return 0.0;
    if (leg.count < 1) throw PhysicsError("positive input power on a leg with zero lines");
    const double cap = leg.count * leg.p_lim_mw;
    const double k = line_loss_coefficient(leg);
    const double driven = leg.converter_eff * p_in_mw;
    if (k == 0.0) return std::min(driven, cap);
    // k*p^2 + p - driven = 0, nonnegative root; written to avoid cancellation.
    const double root = 2.0 * driven / (1.0 + std::sqrt(1.0 + 4.0 * k * driven));
    return std::min(root, cap);
}

double hvdc_send(const LineLeg& leg, double p_out_mw) {
    if (p_out_mw < 0.0) throw PhysicsError("negative line output power: " + fmt(p_out_mw));
    if (p_out_mw == 0.0) return 0.0;
    if (leg.count < 1) throw PhysicsError("positive output power on a leg with zero lines");
    const double k = line_loss_coefficient(leg);
    return (p_out_mw + k * p_out_mw * p_out_mw) / leg.converter_eff;
}

double electrolyzer_power(double cp_e_mwh_per_kg, double h_out_kgph) {
    if (h_out_kgph < 0.0) throw PhysicsError("negative electrolyzer flow: " + fmt(h_out_kgph));
    return cp_e_mwh_per_kg * h_out_kgph;
}

double fuel_cell_power(double cp_fc_mwh_per_kg, double h_in_kgph) {
    if (h_in_kgph < 0.0) throw PhysicsError("negative fuel cell flow: " + fmt(h_in_kgph));
    return cp_fc_mwh_per_kg * h_in_kgph;
}

double compressor_power(double cp_c_mwh_per_kg, double h_kgph) {
    if (h_kgph < 0.0) throw PhysicsError("negative compressor flow: " + fmt(h_kgph));
    return cp_c_mwh_per_kg * h_kgph;
}

FrictionResult friction_factor_detail(double reynolds, double relative_roughness) {
    if (!(reynolds > 4000.0))
        throw PhysicsError("Colebrook-White needs turbulent flow (Re > 4000), got Re = " +
                           fmt(reynolds));
    if (relative_roughness < 0.0)
        throw PhysicsError("negative relative roughness");

    // Fixed point on x = 1/sqrt(lambda): x = -2 log10(rr/3.7 + 2.51 x / Re).
    auto g = [&](double x) {
        return -2.0 * std::log10(relative_roughness / 3.7 + 2.51 * x / reynolds);
    };
    // Swamee-Jain style explicit start.
    double x = -2.0 * std::log10(relative_roughness / 3.7 + 5.74 / std::pow(reynolds, 0.9));
    if (!(x > 0.0)) x = 5.0;

    const double damping = 0.7;
    const int max_iter = 100;
    double residual = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        const double gx = g(x);
        residual = std::abs(gx - x);
        x = (1.0 - damping) * x + damping * gx;
        if (residual < 1e-10)
            return {1.0 / (x * x), residual, it};
    }
    if (residual >= 1e-8)
        throw PhysicsError("Colebrook-White iteration did not converge, residual = " +
                           fmt(residual));
    return {1.0 / (x * x), residual, max_iter};
}

double friction_factor(double reynolds, double relative_roughness) {
    return friction_factor_detail(reynolds, relative_roughness).lambda;
}

double compressibility(double pressure_bar, double temperature_k, double alpha_per_bar) {
    if (pressure_bar < 0.0) throw PhysicsError("negative pressure: " + fmt(pressure_bar));
    if (!(temperature_k > 0.0)) throw PhysicsError("temperature must be positive");
    return 1.0 + alpha_per_bar * pressure_bar;
}

namespace {

// Squared-pressure-drop coefficient per (flow per pipeline)^2.
double pressure_drop_coeff(const PipeLeg& leg) {
    const auto& gas = leg.gas;
    const double prop = gas.friction * gas.compressibility * gas.mean_temperature_k /
                        gas.density_kg_m3;
    const double d5 = std::pow(leg.diameter_m, 5);
    return leg.weymouth_coeff * prop * leg.distance_km / d5;
}

}  // namespace

double pipeline_inlet_pressure_unchecked(const PipeLeg& leg, double h_kgph) {
    if (h_kgph < 0.0) throw PhysicsError("negative pipeline flow: " + fmt(h_kgph));
    if (h_kgph == 0.0) return leg.outlet_pressure_bar;
    if (leg.count < 1) throw PhysicsError("positive flow on a leg with zero pipelines");
    const double per_pipe = h_kgph / leg.count;
    const double p2 = leg.outlet_pressure_bar * leg.outlet_pressure_bar +
                      pressure_drop_coeff(leg) * per_pipe * per_pipe;
    return std::sqrt(p2);
}

double pipeline_inlet_pressure(const PipeLeg& leg, double h_kgph) {
    const double p = pipeline_inlet_pressure_unchecked(leg, h_kgph);
    if (p > leg.max_inlet_pressure_bar * (1.0 + 1e-12))
        throw PhysicsError("flow infeasible: required inlet pressure " + fmt(p) +
                           " bar exceeds the maximum " + fmt(leg.max_inlet_pressure_bar));
    return p;
}

double pipeline_max_flow(const PipeLeg& leg) {
    if (!(leg.distance_km > 0.0)) throw PhysicsError("degenerate pipe leg: zero distance");
    if (leg.max_inlet_pressure_bar < leg.outlet_pressure_bar)
        throw PhysicsError("max inlet pressure below outlet pressure");
    const double dp2 = leg.max_inlet_pressure_bar * leg.max_inlet_pressure_bar -
                       leg.outlet_pressure_bar * leg.outlet_pressure_bar;
    if (dp2 <= 0.0) return 0.0;
    return std::sqrt(dp2 / pressure_drop_coeff(leg));
}

StorageState storage_step(const StorageState& s, double h_in_kgph, double h_out_kgph) {
    if (h_in_kgph < 0.0 || h_out_kgph < 0.0)
        throw PhysicsError("negative storage flow");
    StorageState next = s;
    next.level_kg = s.level_kg + s.dt_hours * (h_in_kgph - h_out_kgph);
    const double tol = 1e-9;
    if (next.level_kg > s.max_kg + tol)
        throw PhysicsError("storage overflow by " + fmt(next.level_kg - s.max_kg) + " kg");
    if (next.level_kg < s.min_kg - tol)
        throw PhysicsError("storage underflow by " + fmt(s.min_kg - next.level_kg) + " kg");
    return next;
}

double pipe_reynolds(double h_kgph, double diameter_m, double viscosity_pa_s) {
    const double mdot = h_kgph / 3600.0;  // kg/s
    return 4.0 * mdot / (M_PI * diameter_m * viscosity_pa_s);
}

GasProperties design_gas_properties(const PipeClassCatalog& pipe, const GasCatalog& gas) {
    GasProperties g;
    g.mean_temperature_k = gas.mean_temperature_k;
    g.density_kg_m3 = gas.density_kg_m3;
    g.roughness_m = gas.roughness_m;
    g.viscosity_pa_s = gas.viscosity_pa_s;
    // Friction at the class's rated flow, compressibility at the mean of the
    // pressure envelope. Hour-by-hour Re variation moves lambda by only a few
    // percent in the turbulent regime, so one design-point value is kept.
    const double re = pipe_reynolds(pipe.h_lim_kgph, pipe.diameter_m, gas.viscosity_pa_s);
    g.friction = friction_factor(re, gas.roughness_m / pipe.diameter_m);
    const double p_mean = 0.5 * (pipe.outlet_pressure_bar + pipe.max_inlet_pressure_bar);
    g.compressibility = compressibility(p_mean, gas.mean_temperature_k, gas.z_alpha_per_bar);
    return g;
}

LineLeg make_line_leg(CaseId c, const Scenario& s, const ComponentCatalog& cat,
                      int farm_index, int count) {
    LineLeg leg;
    const double base = c == CaseId::Hvdc ? s.dist_farm_substation_km.at(farm_index)
                                          : s.dist_farm_hsc_km.at(farm_index);
    leg.distance_km = base * s.distance_scale;
    leg.resistance_ohm_per_km = cat.line.resistance_ohm_per_km;
    leg.voltage_kv = cat.line.voltage_kv;
    leg.converter_eff = cat.line.converter_eff;
    leg.count = count;
    leg.p_lim_mw = cat.line.p_lim_mw;
    leg.loss_coeff = cat.line.loss_coeff;
    return leg;
}

namespace {

PipeLeg make_pipe_leg(const PipeClassCatalog& pipe, const GasCatalog& gas, double length_km,
                      int count) {
    PipeLeg leg;
    leg.distance_km = length_km;
    leg.diameter_m = pipe.diameter_m;
    leg.outlet_pressure_bar = pipe.outlet_pressure_bar;
    leg.max_inlet_pressure_bar = pipe.max_inlet_pressure_bar;
    leg.count = count;
    leg.h_lim_kgph = pipe.h_lim_kgph;
    leg.gas = design_gas_properties(pipe, gas);
    leg.weymouth_coeff = gas.weymouth_coeff;
    return leg;
}

}  // namespace

PipeLeg make_lp_pipe_leg(const Scenario& s, const ComponentCatalog& cat, int farm_index,
                         int count) {
    return make_pipe_leg(cat.pipeline_lp, cat.gas,
                         s.dist_farm_hsc_km.at(farm_index) * s.distance_scale, count);
}

PipeLeg make_hp_pipe_leg(const Scenario& s, const ComponentCatalog& cat, int count) {
    return make_pipe_leg(cat.pipeline_hp, cat.gas, s.dist_hsc_substation_km * s.distance_scale,
                         count);
}

}  // namespace windshore
