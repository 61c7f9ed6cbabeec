#include "windshore/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace windshore {

const char* to_string(CaseId c) {
    switch (c) {
        case CaseId::Hvdc: return "HVDC";
        case CaseId::Hybrid: return "HYBRID";
        case CaseId::Hp: return "HP";
    }
    return "?";
}

CaseId case_from_string(const std::string& name) {
    std::string up;
    up.reserve(name.size());
    for (char ch : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (up == "HVDC") return CaseId::Hvdc;
    if (up == "HYBRID") return CaseId::Hybrid;
    if (up == "HP") return CaseId::Hp;
    throw std::invalid_argument("unknown case id: " + name);
}

std::string format_issues(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    for (const auto& i : issues) os << i.field << ": " << i.message << "\n";
    return os.str();
}

namespace {

void require(std::vector<ValidationIssue>& out, bool ok, const std::string& field,
             const std::string& message) {
    if (!ok) out.push_back({field, message});
}

bool all_positive(const std::vector<double>& v) {
    for (double x : v)
        if (!(x > 0.0)) return false;
    return true;
}

}  // namespace

std::vector<ValidationIssue> validate_scenario(const Scenario& s, const ComponentCatalog&) {
    std::vector<ValidationIssue> out;
    require(out, s.farm_count >= 1, "scenario.farm_count", "must be at least 1");
    require(out, s.horizon_years >= 1, "scenario.horizon_years", "must be at least 1");
    require(out, s.distance_scale > 0.0, "scenario.distance_scale", "distance_scale must be positive");

    auto check_per_farm = [&](const std::vector<double>& v, const char* field, bool positive) {
        if (static_cast<int>(v.size()) != s.farm_count) {
            out.push_back({std::string("scenario.") + field,
                           "expected one entry per farm (" + std::to_string(s.farm_count) +
                               "), got " + std::to_string(v.size())});
            return;
        }
        if (positive && !all_positive(v))
            out.push_back({std::string("scenario.") + field, "all entries must be positive"});
    };
    check_per_farm(s.farm_capacity_mw, "farm_capacity_mw", false);
    for (std::size_t i = 0; i < s.farm_capacity_mw.size(); ++i)
        require(out, s.farm_capacity_mw[i] >= 0.0,
                "scenario.farm_capacity_mw[" + std::to_string(i) + "]", "must be nonnegative");
    check_per_farm(s.dist_farm_substation_km, "dist_farm_substation_km", true);
    check_per_farm(s.dist_farm_hsc_km, "dist_farm_hsc_km", true);
    require(out, s.dist_hsc_substation_km > 0.0, "scenario.dist_hsc_substation_km",
            "must be positive");

    require(out, s.storage_min_kg >= 0.0, "scenario.storage_min_kg", "must be nonnegative");
    if (s.storage_min_kg > s.storage_capacity_kg)
        out.push_back({"scenario.storage_min_kg", "storage bounds inverted"});
    require(out, s.storage_initial_kg >= s.storage_min_kg, "scenario.storage_initial_kg",
            "below storage_min_kg");
    require(out, s.storage_initial_kg <= s.storage_capacity_kg, "scenario.storage_initial_kg",
            "above storage_capacity_kg");
    return out;
}

std::vector<ValidationIssue> validate_catalog(const ComponentCatalog& c) {
    std::vector<ValidationIssue> out;
    require(out, c.line.converter_eff > 0.0 && c.line.converter_eff <= 1.0,
            "catalog.line.converter_eff", "must be in (0, 1]");
    require(out, c.line.p_lim_mw > 0.0, "catalog.line.p_lim_mw", "must be positive");
    require(out, c.line.voltage_kv > 0.0, "catalog.line.voltage_kv", "must be positive");
    require(out, c.line.resistance_ohm_per_km >= 0.0, "catalog.line.resistance_ohm_per_km",
            "must be nonnegative");
    require(out, c.line.loss_coeff >= 0.0, "catalog.line.loss_coeff", "must be nonnegative");

    require(out, c.electrolyzer.rated_mw > 0.0, "catalog.electrolyzer.rated_mw", "must be positive");
    require(out, c.electrolyzer.energy_intensity_mwh_per_kg > 0.0,
            "catalog.electrolyzer.energy_intensity_mwh_per_kg", "must be positive");
    require(out, c.fuel_cell.rated_mw > 0.0, "catalog.fuel_cell.rated_mw", "must be positive");
    require(out, c.fuel_cell.energy_yield_mwh_per_kg > 0.0,
            "catalog.fuel_cell.energy_yield_mwh_per_kg", "must be positive");
    require(out,
            c.fuel_cell.energy_yield_mwh_per_kg < c.electrolyzer.energy_intensity_mwh_per_kg,
            "catalog.fuel_cell.energy_yield_mwh_per_kg",
            "round-trip efficiency must stay below 1 (yield < electrolyzer intensity)");
    require(out, c.compressor.energy_per_kg_mwh >= 0.0, "catalog.compressor.energy_per_kg_mwh",
            "must be nonnegative");

    auto check_pipe = [&](const PipeClassCatalog& p, const char* name) {
        std::string base = std::string("catalog.") + name;
        require(out, p.h_lim_kgph > 0.0, base + ".h_lim_kgph", "must be positive");
        require(out, p.diameter_m > 0.0, base + ".diameter_m", "must be positive");
        require(out, p.outlet_pressure_bar > 0.0, base + ".outlet_pressure_bar", "must be positive");
        require(out, p.max_inlet_pressure_bar > p.outlet_pressure_bar,
                base + ".max_inlet_pressure_bar", "must exceed outlet pressure");
    };
    check_pipe(c.pipeline_lp, "pipeline_lp");
    check_pipe(c.pipeline_hp, "pipeline_hp");

    require(out, c.gas.mean_temperature_k > 0.0, "catalog.gas.mean_temperature_k", "must be positive");
    require(out, c.gas.density_kg_m3 > 0.0, "catalog.gas.density_kg_m3", "must be positive");
    require(out, c.gas.viscosity_pa_s > 0.0, "catalog.gas.viscosity_pa_s", "must be positive");
    require(out, c.gas.roughness_m >= 0.0, "catalog.gas.roughness_m", "must be nonnegative");
    require(out, c.gas.weymouth_coeff > 0.0, "catalog.gas.weymouth_coeff", "must be positive");

    for (auto [v, f] : {std::pair{c.line.capex_per_km, "catalog.line.capex_per_km"},
                        {c.line.capex_converter_pair, "catalog.line.capex_converter_pair"},
                        {c.electrolyzer.capex_per_unit, "catalog.electrolyzer.capex_per_unit"},
                        {c.fuel_cell.capex_per_unit, "catalog.fuel_cell.capex_per_unit"},
                        {c.compressor.capex_per_kgph_capacity,
                         "catalog.compressor.capex_per_kgph_capacity"},
                        {c.pipeline_lp.capex_per_km, "catalog.pipeline_lp.capex_per_km"},
                        {c.pipeline_hp.capex_per_km, "catalog.pipeline_hp.capex_per_km"},
                        {c.storage.capex_per_kg, "catalog.storage.capex_per_kg"}})
        require(out, v >= 0.0, f, "must be nonnegative");
    return out;
}

std::vector<ValidationIssue> validate_day(const DayProfile& d, int expected_farms,
                                          bool require_24h) {
    std::vector<ValidationIssue> out;
    const int T = d.hours();
    if (T == 0) {
        out.push_back({"day", "empty profile"});
        return out;
    }
    if (require_24h && T != 24)
        out.push_back({"day.hours", "expected 24 hourly rows, got " + std::to_string(T)});
    require(out, d.dt_hours > 0.0, "day.dt_hours", "must be positive");
    if (d.farms() != expected_farms) {
        out.push_back({"day.wind_capacity_factor",
                       "expected " + std::to_string(expected_farms) + " farm columns, got " +
                           std::to_string(d.farms())});
        return out;
    }
    for (int f = 0; f < d.farms(); ++f) {
        if (static_cast<int>(d.wind_capacity_factor[f].size()) != T) {
            out.push_back({"day.wind_capacity_factor[" + std::to_string(f) + "]",
                           "length differs from price series"});
            continue;
        }
        for (int t = 0; t < T; ++t) {
            double cf = d.wind_capacity_factor[f][t];
            if (!(cf >= 0.0 && cf <= 1.0))
                out.push_back({"day.cf_farm" + std::to_string(f + 1) + "[" + std::to_string(t) + "]",
                               "capacity factor outside [0,1]"});
        }
    }
    for (int t = 0; t < T; ++t)
        if (!(d.lmp_usd_per_mwh[t] >= 0.0))
            out.push_back({"day.lmp[" + std::to_string(t) + "]", "price must be nonnegative"});
    return out;
}

double round_trip_efficiency(const ComponentCatalog& c) {
    return c.fuel_cell.energy_yield_mwh_per_kg / c.electrolyzer.energy_intensity_mwh_per_kg;
}

}  // namespace windshore
