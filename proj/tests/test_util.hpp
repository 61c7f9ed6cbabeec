#pragma once

#include <cstdint>
#include <vector>

#include "windshore/model.hpp"

namespace windshore::testing {

// Deterministic splitmix64 stream; keeps test data identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

inline ComponentCatalog toy_catalog() {
    ComponentCatalog c;
    c.line = {800.0, 320.0, 5e-5, 0.97, 1.2e6, 1.8e8, 0.01, 1000.0};
    c.electrolyzer = {0.25, 0.0527, 2.5e5, 0.02};
    c.fuel_cell = {0.1, 0.019868, 1.0e5, 0.02};
    c.compressor = {0.002, 4000.0, 0.04};
    c.pipeline_lp = {15000.0, 0.4, 20.0, 50.0, 3.0e5, 0.01};
    c.pipeline_hp = {40000.0, 0.5, 70.0, 200.0, 4.5e5, 0.01};
    c.storage = {400.0, 0.01};
    c.gas = {1.5e-5, 8.9e-6, 288.15, 8.0, 6.4e-4, 4.13e-10};
    return c;
}

inline Scenario toy_scenario(int farms = 3, double capacity_mw = 720.0) {
    Scenario s;
    s.farm_count = farms;
    s.farm_capacity_mw.assign(farms, capacity_mw);
    s.dist_farm_substation_km.assign(farms, 100.0);
    s.dist_farm_hsc_km.assign(farms, 30.0);
    s.dist_hsc_substation_km = 85.0;
    s.horizon_years = 30;
    s.storage_capacity_kg = 4.0e5;
    s.storage_min_kg = 2.0e4;
    s.storage_initial_kg = 1.0e5;
    s.distance_scale = 1.0;
    return s;
}

inline DayProfile flat_day(int farms, int hours, double cf, double lmp, double dt = 1.0) {
    DayProfile d;
    d.wind_capacity_factor.assign(farms, std::vector<double>(hours, cf));
    d.lmp_usd_per_mwh.assign(hours, lmp);
    d.dt_hours = dt;
    return d;
}

inline DayProfile custom_day(std::vector<std::vector<double>> cf, std::vector<double> lmp,
                             double dt = 1.0) {
    DayProfile d;
    d.wind_capacity_factor = std::move(cf);
    d.lmp_usd_per_mwh = std::move(lmp);
    d.dt_hours = dt;
    return d;
}

}  // namespace windshore::testing
