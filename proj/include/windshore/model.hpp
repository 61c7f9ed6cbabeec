#pragma once

#include <string>
#include <vector>

namespace windshore {

/// Transmission topology variants compared by the planning engine.
enum class CaseId { Hvdc, Hybrid, Hp };

const char* to_string(CaseId c);
CaseId case_from_string(const std::string& name);

/// Gas state and friction data attached to a pipeline leg. `friction` and
/// `compressibility` are derived once per leg at design flow; the remaining
/// fields are the inputs to those correlations.
struct GasProperties {
    double friction = 0.012;          // Darcy friction factor
    double compressibility = 1.0;     // Z
    double mean_temperature_k = 288.15;
    double density_kg_m3 = 8.0;       // at pipeline reference conditions
    double roughness_m = 1.5e-5;
    double viscosity_pa_s = 8.9e-6;
};

struct LineCatalog {
    double p_lim_mw = 800.0;            // per-line transfer limit
    double voltage_kv = 320.0;          // receiving-end voltage
    double resistance_ohm_per_km = 5e-5;
    double converter_eff = 0.97;        // DC converter pair efficiency
    double capex_per_km = 1.2e6;        // USD per km per line
    double capex_converter_pair = 1.8e8;
    double opex_frac_per_year = 0.01;
    double loss_coeff = 1000.0;         // quadratic-loss scale constant
};

struct ElectrolyzerCatalog {
    double rated_mw = 0.25;
    double energy_intensity_mwh_per_kg = 0.0527;  // MWh consumed per kg produced
    double capex_per_unit = 2.5e5;
    double opex_frac = 0.02;
};

struct FuelCellCatalog {
    double rated_mw = 0.1;
    double energy_yield_mwh_per_kg = 0.019868;    // MWh recovered per kg consumed
    double capex_per_unit = 1.0e5;
    double opex_frac = 0.02;
};

struct CompressorCatalog {
    double energy_per_kg_mwh = 0.002;
    double capex_per_kgph_capacity = 4000.0;
    double opex_frac = 0.04;
};

struct PipeClassCatalog {
    double h_lim_kgph = 0.0;            // per-pipeline flow rating
    double diameter_m = 0.0;
    double outlet_pressure_bar = 0.0;
    double max_inlet_pressure_bar = 0.0;
    double capex_per_km = 0.0;          // USD per km per pipeline
    double opex_frac = 0.01;
};

struct StorageCatalog {
    double capex_per_kg = 400.0;
    double opex_frac = 0.01;
};

struct GasCatalog {
    double roughness_m = 1.5e-5;
    double viscosity_pa_s = 8.9e-6;
    double mean_temperature_k = 288.15;
    double density_kg_m3 = 8.0;
    double z_alpha_per_bar = 6.4e-4;    // slope of Z(p) near the mean temperature
    double weymouth_coeff = 5007.7;     // squared-pressure-drop scale constant
};

/// Ratings, efficiencies and unit costs for every component class.
struct ComponentCatalog {
    LineCatalog line;
    ElectrolyzerCatalog electrolyzer;
    FuelCellCatalog fuel_cell;
    CompressorCatalog compressor;
    PipeClassCatalog pipeline_lp;   // farm -> HSC legs
    PipeClassCatalog pipeline_hp;   // HSC -> substation leg
    StorageCatalog storage;
    GasCatalog gas;
};

/// Geometry, capacities and storage bounds for one planning study.
struct Scenario {
    int farm_count = 0;
    std::vector<double> farm_capacity_mw;
    std::vector<double> dist_farm_substation_km;
    std::vector<double> dist_farm_hsc_km;
    double dist_hsc_substation_km = 0.0;
    int horizon_years = 0;
    double storage_capacity_kg = 0.0;
    double storage_min_kg = 0.0;
    double storage_initial_kg = 0.0;
    double distance_scale = 1.0;
};

/// Hourly wind capacity factors per farm plus the onshore price series.
/// The external CSV format is fixed at 24 rows; shorter horizons are allowed
/// programmatically for verification instances.
struct DayProfile {
    std::vector<std::vector<double>> wind_capacity_factor;  // [farm][hour]
    std::vector<double> lmp_usd_per_mwh;                    // [hour]
    double dt_hours = 1.0;

    int hours() const { return static_cast<int>(lmp_usd_per_mwh.size()); }
    int farms() const { return static_cast<int>(wind_capacity_factor.size()); }
};

struct ValidationIssue {
    std::string field;    // dotted path, e.g. "scenario.storage_min_kg"
    std::string message;
};

std::string format_issues(const std::vector<ValidationIssue>& issues);

/// Checks every scenario invariant against the catalog context. Returns all
/// violations with field paths; an empty list means the scenario is valid.
std::vector<ValidationIssue> validate_scenario(const Scenario& s, const ComponentCatalog& c);

/// Catalog invariants (positive ratings, efficiencies in range, round trip < 1).
std::vector<ValidationIssue> validate_catalog(const ComponentCatalog& c);

/// Day-profile invariants. `require_24h` enforces the external-interface slot
/// count; toy instances used in verification may be shorter.
std::vector<ValidationIssue> validate_day(const DayProfile& d, int expected_farms,
                                          bool require_24h = true);

/// Electric energy recovered per electric energy spent for one kg of hydrogen.
double round_trip_efficiency(const ComponentCatalog& c);

}  // namespace windshore
