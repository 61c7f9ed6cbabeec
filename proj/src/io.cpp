#include "windshore/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace windshore {

using json = nlohmann::ordered_json;

namespace {

json parse_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open " + file.string());
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw ParseError("unknown key '" + path + key + "'");
}

void check_schema_version(const json& j, const std::filesystem::path& file) {
    if (!j.contains("schema_version"))
        throw ParseError(file.string() + ": missing schema_version");
    if (j["schema_version"].get<int>() != kSchemaVersion)
        throw ParseError(file.string() + ": unsupported schema_version " +
                         j["schema_version"].dump() + " (expected " +
                         std::to_string(kSchemaVersion) + ")");
}

double get_num(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ParseError("missing key '" + path + key + "'");
    if (!j[key].is_number()) throw ParseError("'" + path + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ParseError("missing key '" + path + key + "'");
    if (!j[key].is_number_integer()) throw ParseError("'" + path + key + "' must be an integer");
    return j[key].get<int>();
}

std::vector<double> get_vec(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ParseError("missing key '" + path + key + "'");
    if (!j[key].is_array()) throw ParseError("'" + path + key + "' must be an array");
    std::vector<double> v;
    for (const auto& e : j[key]) {
        if (!e.is_number()) throw ParseError("'" + path + key + "' must hold numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& file) {
    json j = parse_file(file);
    check_schema_version(j, file);
    reject_unknown(j, {"schema_version", "farm_count", "farm_capacity_mw",
                       "dist_farm_substation_km", "dist_farm_hsc_km", "dist_hsc_substation_km",
                       "horizon_years", "storage_capacity_kg", "storage_min_kg",
                       "storage_initial_kg", "distance_scale"},
                   "");
    Scenario s;
    s.farm_count = get_int(j, "farm_count", "");
    s.farm_capacity_mw = get_vec(j, "farm_capacity_mw", "");
    s.dist_farm_substation_km = get_vec(j, "dist_farm_substation_km", "");
    s.dist_farm_hsc_km = get_vec(j, "dist_farm_hsc_km", "");
    s.dist_hsc_substation_km = get_num(j, "dist_hsc_substation_km", "");
    s.horizon_years = get_int(j, "horizon_years", "");
    s.storage_capacity_kg = get_num(j, "storage_capacity_kg", "");
    s.storage_min_kg = get_num(j, "storage_min_kg", "");
    s.storage_initial_kg = get_num(j, "storage_initial_kg", "");
    s.distance_scale = get_num(j, "distance_scale", "");
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& file) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["farm_count"] = s.farm_count;
    j["farm_capacity_mw"] = s.farm_capacity_mw;
    j["dist_farm_substation_km"] = s.dist_farm_substation_km;
    j["dist_farm_hsc_km"] = s.dist_farm_hsc_km;
    j["dist_hsc_substation_km"] = s.dist_hsc_substation_km;
    j["horizon_years"] = s.horizon_years;
    j["storage_capacity_kg"] = s.storage_capacity_kg;
    j["storage_min_kg"] = s.storage_min_kg;
    j["storage_initial_kg"] = s.storage_initial_kg;
    j["distance_scale"] = s.distance_scale;
    std::ofstream out(file);
    out << j.dump(2) << "\n";
}

ComponentCatalog load_catalog(const std::filesystem::path& file) {
    json j = parse_file(file);
    check_schema_version(j, file);
    reject_unknown(j, {"schema_version", "line", "electrolyzer", "fuel_cell", "compressor",
                       "pipeline_lp", "pipeline_hp", "storage", "gas"},
                   "");
    ComponentCatalog c;
    {
        const json& l = j.at("line");
        reject_unknown(l, {"p_lim_mw", "voltage_kv", "resistance_ohm_per_km", "converter_eff",
                           "capex_per_km", "capex_converter_pair", "opex_frac_per_year",
                           "loss_coeff"},
                       "line.");
        c.line.p_lim_mw = get_num(l, "p_lim_mw", "line.");
        c.line.voltage_kv = get_num(l, "voltage_kv", "line.");
        c.line.resistance_ohm_per_km = get_num(l, "resistance_ohm_per_km", "line.");
        c.line.converter_eff = get_num(l, "converter_eff", "line.");
        c.line.capex_per_km = get_num(l, "capex_per_km", "line.");
        c.line.capex_converter_pair = get_num(l, "capex_converter_pair", "line.");
        c.line.opex_frac_per_year = get_num(l, "opex_frac_per_year", "line.");
        c.line.loss_coeff = get_num(l, "loss_coeff", "line.");
    }
    {
        const json& e = j.at("electrolyzer");
        reject_unknown(e, {"rated_mw", "energy_intensity_mwh_per_kg", "capex_per_unit",
                           "opex_frac"},
                       "electrolyzer.");
        c.electrolyzer.rated_mw = get_num(e, "rated_mw", "electrolyzer.");
        c.electrolyzer.energy_intensity_mwh_per_kg =
            get_num(e, "energy_intensity_mwh_per_kg", "electrolyzer.");
        c.electrolyzer.capex_per_unit = get_num(e, "capex_per_unit", "electrolyzer.");
        c.electrolyzer.opex_frac = get_num(e, "opex_frac", "electrolyzer.");
    }
    {
        const json& f = j.at("fuel_cell");
        reject_unknown(f, {"rated_mw", "energy_yield_mwh_per_kg", "capex_per_unit", "opex_frac"},
                       "fuel_cell.");
        c.fuel_cell.rated_mw = get_num(f, "rated_mw", "fuel_cell.");
        c.fuel_cell.energy_yield_mwh_per_kg =
            get_num(f, "energy_yield_mwh_per_kg", "fuel_cell.");
        c.fuel_cell.capex_per_unit = get_num(f, "capex_per_unit", "fuel_cell.");
        c.fuel_cell.opex_frac = get_num(f, "opex_frac", "fuel_cell.");
    }
    {
        const json& cp = j.at("compressor");
        reject_unknown(cp, {"energy_per_kg_mwh", "capex_per_kgph_capacity", "opex_frac"},
                       "compressor.");
        c.compressor.energy_per_kg_mwh = get_num(cp, "energy_per_kg_mwh", "compressor.");
        c.compressor.capex_per_kgph_capacity =
            get_num(cp, "capex_per_kgph_capacity", "compressor.");
        c.compressor.opex_frac = get_num(cp, "opex_frac", "compressor.");
    }
    auto load_pipe = [&](const char* key) {
        const json& p = j.at(key);
        const std::string path = std::string(key) + ".";
        reject_unknown(p, {"h_lim_kgph", "diameter_m", "outlet_pressure_bar",
                           "max_inlet_pressure_bar", "capex_per_km", "opex_frac"},
                       path);
        PipeClassCatalog pc;
        pc.h_lim_kgph = get_num(p, "h_lim_kgph", path);
        pc.diameter_m = get_num(p, "diameter_m", path);
        pc.outlet_pressure_bar = get_num(p, "outlet_pressure_bar", path);
        pc.max_inlet_pressure_bar = get_num(p, "max_inlet_pressure_bar", path);
        pc.capex_per_km = get_num(p, "capex_per_km", path);
        pc.opex_frac = get_num(p, "opex_frac", path);
        return pc;
    };
    c.pipeline_lp = load_pipe("pipeline_lp");
    c.pipeline_hp = load_pipe("pipeline_hp");
    {
        const json& st = j.at("storage");
        reject_unknown(st, {"capex_per_kg", "opex_frac"}, "storage.");
        c.storage.capex_per_kg = get_num(st, "capex_per_kg", "storage.");
        c.storage.opex_frac = get_num(st, "opex_frac", "storage.");
    }
    {
        const json& g = j.at("gas");
        reject_unknown(g, {"roughness_m", "viscosity_pa_s", "mean_temperature_k",
                           "density_kg_m3", "z_alpha_per_bar", "weymouth_coeff"},
                       "gas.");
        c.gas.roughness_m = get_num(g, "roughness_m", "gas.");
        c.gas.viscosity_pa_s = get_num(g, "viscosity_pa_s", "gas.");
        c.gas.mean_temperature_k = get_num(g, "mean_temperature_k", "gas.");
        c.gas.density_kg_m3 = get_num(g, "density_kg_m3", "gas.");
        c.gas.z_alpha_per_bar = get_num(g, "z_alpha_per_bar", "gas.");
        c.gas.weymouth_coeff = get_num(g, "weymouth_coeff", "gas.");
    }
    return c;
}

void save_catalog(const ComponentCatalog& c, const std::filesystem::path& file) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["line"] = {{"p_lim_mw", c.line.p_lim_mw},
                 {"voltage_kv", c.line.voltage_kv},
                 {"resistance_ohm_per_km", c.line.resistance_ohm_per_km},
                 {"converter_eff", c.line.converter_eff},
                 {"capex_per_km", c.line.capex_per_km},
                 {"capex_converter_pair", c.line.capex_converter_pair},
                 {"opex_frac_per_year", c.line.opex_frac_per_year},
                 {"loss_coeff", c.line.loss_coeff}};
    j["electrolyzer"] = {{"rated_mw", c.electrolyzer.rated_mw},
                         {"energy_intensity_mwh_per_kg", c.electrolyzer.energy_intensity_mwh_per_kg},
                         {"capex_per_unit", c.electrolyzer.capex_per_unit},
                         {"opex_frac", c.electrolyzer.opex_frac}};
    j["fuel_cell"] = {{"rated_mw", c.fuel_cell.rated_mw},
                      {"energy_yield_mwh_per_kg", c.fuel_cell.energy_yield_mwh_per_kg},
                      {"capex_per_unit", c.fuel_cell.capex_per_unit},
                      {"opex_frac", c.fuel_cell.opex_frac}};
    j["compressor"] = {{"energy_per_kg_mwh", c.compressor.energy_per_kg_mwh},
                       {"capex_per_kgph_capacity", c.compressor.capex_per_kgph_capacity},
                       {"opex_frac", c.compressor.opex_frac}};
    auto pipe_json = [](const PipeClassCatalog& p) {
        return json{{"h_lim_kgph", p.h_lim_kgph},
                    {"diameter_m", p.diameter_m},
                    {"outlet_pressure_bar", p.outlet_pressure_bar},
                    {"max_inlet_pressure_bar", p.max_inlet_pressure_bar},
                    {"capex_per_km", p.capex_per_km},
                    {"opex_frac", p.opex_frac}};
    };
    j["pipeline_lp"] = pipe_json(c.pipeline_lp);
    j["pipeline_hp"] = pipe_json(c.pipeline_hp);
    j["storage"] = {{"capex_per_kg", c.storage.capex_per_kg}, {"opex_frac", c.storage.opex_frac}};
    j["gas"] = {{"roughness_m", c.gas.roughness_m},
                {"viscosity_pa_s", c.gas.viscosity_pa_s},
                {"mean_temperature_k", c.gas.mean_temperature_k},
                {"density_kg_m3", c.gas.density_kg_m3},
                {"z_alpha_per_bar", c.gas.z_alpha_per_bar},
                {"weymouth_coeff", c.gas.weymouth_coeff}};
    std::ofstream out(file);
    out << j.dump(2) << "\n";
}

DayProfile load_day_profile(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(file.string() + ": empty file");

    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur.push_back(ch);
            }
        }
        parts.push_back(cur);
        return parts;
    };

    const auto header = split(line);
    if (header.size() < 3 || header.front() != "hour" || header.back() != "lmp")
        throw ParseError(file.string() + ": header must be hour,cf_farm1,...,cf_farmN,lmp");
    const int farms = static_cast<int>(header.size()) - 2;
    for (int f = 0; f < farms; ++f)
        if (header[f + 1] != "cf_farm" + std::to_string(f + 1))
            throw ParseError(file.string() + ": column " + std::to_string(f + 2) +
                             " must be cf_farm" + std::to_string(f + 1));

    DayProfile day;
    day.wind_capacity_factor.assign(farms, {});
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row;
        const auto parts = split(line);
        if (parts.size() != header.size())
            throw ParseError(file.string() + ": row " + std::to_string(row) + " has " +
                             std::to_string(parts.size()) + " columns, expected " +
                             std::to_string(header.size()));
        auto num = [&](int col) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(parts[col], &pos);
                if (pos != parts[col].size()) throw std::invalid_argument("");
                return v;
            } catch (...) {
                throw ParseError(file.string() + ": row " + std::to_string(row) + ", column " +
                                 std::to_string(col + 1) + ": not a number: '" + parts[col] + "'");
            }
        };
        const int hour = static_cast<int>(num(0));
        if (hour != row - 1)
            throw ParseError(file.string() + ": row " + std::to_string(row) +
                             ": hours must run 0..23 in order");
        for (int f = 0; f < farms; ++f) {
            const double cf = num(f + 1);
            if (!(cf >= 0.0 && cf <= 1.0))
                throw ParseError(file.string() + ": row " + std::to_string(row) + ", column " +
                                 std::to_string(f + 2) + ": capacity factor " + fmt_full(cf) +
                                 " outside [0,1]");
            day.wind_capacity_factor[f].push_back(cf);
        }
        const double lmp = num(static_cast<int>(header.size()) - 1);
        if (!(lmp >= 0.0))
            throw ParseError(file.string() + ": row " + std::to_string(row) +
                             ": lmp must be nonnegative");
        day.lmp_usd_per_mwh.push_back(lmp);
    }
    if (day.hours() != 24)
        throw ParseError(file.string() + ": expected 24 hourly rows, got " +
                         std::to_string(day.hours()));
    return day;
}

void save_day_profile(const DayProfile& day, const std::filesystem::path& file) {
    std::ofstream out(file);
    out << "hour";
    for (int f = 0; f < day.farms(); ++f) out << ",cf_farm" << f + 1;
    out << ",lmp\n";
    for (int t = 0; t < day.hours(); ++t) {
        out << t;
        for (int f = 0; f < day.farms(); ++f) out << "," << fmt_full(day.wind_capacity_factor[f][t]);
        out << "," << fmt_full(day.lmp_usd_per_mwh[t]) << "\n";
    }
}

DayProfile generate_synthetic_day(unsigned seed, int farms, double mean_cf, double lmp_mean,
                                  double lmp_amplitude) {
    if (farms < 1) throw std::invalid_argument("farms must be at least 1");
    if (!(mean_cf > 0.0 && mean_cf < 1.0))
        throw std::invalid_argument("mean_cf must lie in (0,1)");
    if (!(lmp_mean >= 0.0) || !(lmp_amplitude >= 0.0))
        throw std::invalid_argument("lmp parameters must be nonnegative");

    // splitmix64 stream: portable and stable across platforms
    std::uint64_t state = seed;
    auto next_u64 = [&]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    auto uniform = [&]() { return (next_u64() >> 11) * (1.0 / 9007199254740992.0); };

    const double pi = 3.14159265358979323846;
    DayProfile day;
    day.wind_capacity_factor.assign(farms, std::vector<double>(24, 0.0));
    day.lmp_usd_per_mwh.assign(24, 0.0);

    const double cf_amp = 0.35 * mean_cf;   // night-peaking diurnal swing
    const double noise_amp = 0.05;
    for (int f = 0; f < farms; ++f) {
        for (int t = 0; t < 24; ++t) {
            const double diurnal = cf_amp * std::sin(2.0 * pi * (t - 22.0) / 24.0);
            const double noise = noise_amp * (2.0 * uniform() - 1.0);
            day.wind_capacity_factor[f][t] = std::clamp(mean_cf + diurnal + noise, 0.0, 1.0);
        }
    }
    for (int t = 0; t < 24; ++t) {
        const double shape = std::sin(2.0 * pi * (t - 12.0) / 24.0);  // evening peak
        day.lmp_usd_per_mwh[t] = std::max(0.0, lmp_mean + lmp_amplitude * shape);
    }
    return day;
}

void save_sizing_report(const SizingOutcome& outcome, CaseId c,
                        const std::filesystem::path& file) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["case"] = to_string(c);
    j["decision"] = {{"lines_per_farm", outcome.decision.lines_per_farm},
                     {"lp_pipes_per_farm", outcome.decision.lp_pipes_per_farm},
                     {"hp_pipes", outcome.decision.hp_pipes},
                     {"electrolyzers_per_site", outcome.decision.electrolyzers_per_site},
                     {"fuel_cells", outcome.decision.fuel_cells}};
    j["net_benefit_usd"] = outcome.net_benefit_usd;
    j["lifetime_revenue_usd"] = outcome.lifetime_revenue_usd;
    auto item = [](const CostItem& it) {
        return json{{"capex_usd", it.capex_usd}, {"annual_opex_usd", it.annual_opex_usd}};
    };
    j["cost"] = {{"lines", item(outcome.cost.lines)},
                 {"pipelines_lp", item(outcome.cost.pipelines_lp)},
                 {"pipelines_hp", item(outcome.cost.pipelines_hp)},
                 {"electrolyzers", item(outcome.cost.electrolyzers)},
                 {"fuel_cells", item(outcome.cost.fuel_cells)},
                 {"compressors", item(outcome.cost.compressors)},
                 {"storage", item(outcome.cost.storage)},
                 {"years", outcome.cost.years},
                 {"total_usd", outcome.cost.total_usd()}};
    j["day_revenue_usd"] = outcome.dispatch.day_revenue_usd;
    std::ofstream out(file);
    out << j.dump(2) << "\n";
}

SizingDecision load_sizing_decision(const std::filesystem::path& file) {
    json j = parse_file(file);
    check_schema_version(j, file);
    if (!j.contains("decision")) throw ParseError(file.string() + ": missing 'decision'");
    const json& d = j["decision"];
    reject_unknown(d, {"lines_per_farm", "lp_pipes_per_farm", "hp_pipes",
                       "electrolyzers_per_site", "fuel_cells"},
                   "decision.");
    SizingDecision out;
    out.lines_per_farm = d.at("lines_per_farm").get<std::vector<int>>();
    out.lp_pipes_per_farm = d.at("lp_pipes_per_farm").get<std::vector<int>>();
    out.hp_pipes = d.at("hp_pipes").get<int>();
    out.electrolyzers_per_site = d.at("electrolyzers_per_site").get<std::vector<int>>();
    out.fuel_cells = d.at("fuel_cells").get<int>();
    return out;
}

namespace {

std::string billions(double usd) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", usd / 1e9);
    return buf;
}

int total(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
}

}  // namespace

std::string sizing_table_text(CaseId c, const SizingOutcome& o) {
    std::ostringstream os;
    os << to_string(c) << " case: net benefit " << billions(o.net_benefit_usd) << " B$\n";
    auto cell = [&](int n, bool present) { return present ? std::to_string(n) : std::string("-"); };
    os << "  # of HVDC Lines: " << cell(total(o.decision.lines_per_farm), c != CaseId::Hp) << "\n";
    os << "  # of LPHP:       " << cell(total(o.decision.lp_pipes_per_farm), c == CaseId::Hp)
       << "\n";
    os << "  # of HPHP:       " << cell(o.decision.hp_pipes, c != CaseId::Hvdc) << "\n";
    os << "  # of Electrolyzers: "
       << cell(o.decision.total_electrolyzers(), c != CaseId::Hvdc) << "\n";
    os << "  # of Fuel Cells:    " << cell(o.decision.fuel_cells, c != CaseId::Hvdc) << "\n";
    return os.str();
}

std::string sizing_table_text(const ThreeCaseReport& report) {
    std::ostringstream os;
    os << "Case      NetBenefit(B$)  #HVDCLines  #LPHP  #HPHP  #Electrolyzers  #FuelCells\n";
    for (const auto& cr : report.cases) {
        if (!cr.ok) {
            os << to_string(cr.case_id) << "  failed: " << cr.error << "\n";
            continue;
        }
        const auto& d = cr.outcome.decision;
        const CaseId c = cr.case_id;
        auto cell = [&](int n, bool present) {
            return present ? std::to_string(n) : std::string("-");
        };
        char line[256];
        std::snprintf(line, sizeof line, "%-9s %14s  %10s  %5s  %5s  %14s  %10s\n",
                      to_string(c), billions(cr.outcome.net_benefit_usd).c_str(),
                      cell(total(d.lines_per_farm), c != CaseId::Hp).c_str(),
                      cell(total(d.lp_pipes_per_farm), c == CaseId::Hp).c_str(),
                      cell(d.hp_pipes, c != CaseId::Hvdc).c_str(),
                      cell(d.total_electrolyzers(), c != CaseId::Hvdc).c_str(),
                      cell(d.fuel_cells, c != CaseId::Hvdc).c_str());
        os << line;
    }
    os << "Ranking:";
    for (CaseId c : report.ranking) os << " " << to_string(c);
    os << "\n";
    return os.str();
}

void save_dispatch_csv(const DispatchResult& r, const std::filesystem::path& file) {
    std::ofstream out(file);
    out << "hour,delivered_mw,storage_kg";
    const int farms = static_cast<int>(std::max(r.line_p_in_mw.size(), r.lp_pipe_h_kgph.size()));
    for (int k = 0; k < static_cast<int>(r.line_p_in_mw.size()); ++k)
        out << ",line" << k + 1 << "_p_in_mw,line" << k + 1 << "_p_out_mw";
    for (int k = 0; k < static_cast<int>(r.lp_pipe_h_kgph.size()); ++k)
        out << ",lp_pipe" << k + 1 << "_h_kgph,lp_pipe" << k + 1 << "_p_in_bar";
    if (!r.hp_pipe_h_kgph.empty()) out << ",hp_pipe_h_kgph,hp_pipe_p_in_bar";
    for (int s = 0; s < static_cast<int>(r.electrolyzer_p_mw.size()); ++s)
        out << ",elec" << s + 1 << "_p_mw,elec" << s + 1 << "_h_kgph";
    for (int s = 0; s < static_cast<int>(r.compressor_p_mw.size()); ++s)
        out << ",comp" << s + 1 << "_p_mw";
    if (!r.booster_p_mw.empty()) out << ",booster_p_mw";
    if (!r.fuel_cell_p_mw.empty()) out << ",fc_h_in_kgph,fc_p_out_mw";
    if (!r.storage_in_kgph.empty()) out << ",hs_in_kgph,hs_out_kgph";
    for (int k = 0; k < farms && k < static_cast<int>(r.farm_curtail_mw.size()); ++k)
        out << ",curtail" << k + 1 << "_mw";
    if (!r.hsc_spill_mw.empty()) out << ",hsc_spill_mw";
    out << "\n";

    for (int t = 0; t < r.hours; ++t) {
        out << t << "," << fmt_full(r.delivered_mw[t]) << "," << fmt_full(r.storage_kg[t]);
        for (std::size_t k = 0; k < r.line_p_in_mw.size(); ++k)
            out << "," << fmt_full(r.line_p_in_mw[k][t]) << "," << fmt_full(r.line_p_out_mw[k][t]);
        for (std::size_t k = 0; k < r.lp_pipe_h_kgph.size(); ++k)
            out << "," << fmt_full(r.lp_pipe_h_kgph[k][t]) << ","
                << fmt_full(r.lp_pipe_p_in_bar[k][t]);
        if (!r.hp_pipe_h_kgph.empty())
            out << "," << fmt_full(r.hp_pipe_h_kgph[t]) << "," << fmt_full(r.hp_pipe_p_in_bar[t]);
        for (std::size_t s = 0; s < r.electrolyzer_p_mw.size(); ++s)
            out << "," << fmt_full(r.electrolyzer_p_mw[s][t]) << ","
                << fmt_full(r.electrolyzer_h_kgph[s][t]);
        for (std::size_t s = 0; s < r.compressor_p_mw.size(); ++s)
            out << "," << fmt_full(r.compressor_p_mw[s][t]);
        if (!r.booster_p_mw.empty()) out << "," << fmt_full(r.booster_p_mw[t]);
        if (!r.fuel_cell_p_mw.empty())
            out << "," << fmt_full(r.fuel_cell_h_kgph[t]) << "," << fmt_full(r.fuel_cell_p_mw[t]);
        if (!r.storage_in_kgph.empty())
            out << "," << fmt_full(r.storage_in_kgph[t]) << "," << fmt_full(r.storage_out_kgph[t]);
        for (std::size_t k = 0; k < r.farm_curtail_mw.size(); ++k)
            out << "," << fmt_full(r.farm_curtail_mw[k][t]);
        if (!r.hsc_spill_mw.empty()) out << "," << fmt_full(r.hsc_spill_mw[t]);
        out << "\n";
    }
    out << "# day_revenue_usd," << fmt_full(r.day_revenue_usd) << "\n";
    out << "# curtailed_mwh," << fmt_full(r.curtailed_mwh) << "\n";
}

void save_sweep_table_csv(const SweepResult& r, const std::filesystem::path& file) {
    std::ofstream out(file);
    out << to_string(r.spec.axis);
    for (CaseId c : r.spec.cases) out << "," << to_string(c);
    out << "\n";
    for (std::size_t vi = 0; vi < r.spec.values.size(); ++vi) {
        out << fmt_full(r.spec.values[vi]);
        for (std::size_t ci = 0; ci < r.spec.cases.size(); ++ci) {
            const auto& cell = r.cells[vi][ci];
            out << "," << (cell.ok ? billions(cell.net_benefit_usd) : "error");
        }
        out << "\n";
    }
}

void save_sweep_json(const SweepResult& r, const std::filesystem::path& file) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["axis"] = to_string(r.spec.axis);
    j["values"] = r.spec.values;
    json cases = json::array();
    for (CaseId c : r.spec.cases) cases.push_back(to_string(c));
    j["cases"] = cases;
    json grid = json::array();
    for (std::size_t vi = 0; vi < r.spec.values.size(); ++vi) {
        json row = json::array();
        for (std::size_t ci = 0; ci < r.spec.cases.size(); ++ci) {
            const auto& cell = r.cells[vi][ci];
            json cj;
            cj["ok"] = cell.ok;
            if (!cell.ok) {
                cj["error"] = cell.error;
            } else {
                cj["net_benefit_usd"] = cell.net_benefit_usd;
                cj["lifetime_revenue_usd"] = cell.lifetime_revenue_usd;
                cj["cost_total_usd"] = cell.cost.total_usd();
                cj["decision"] = {{"lines_per_farm", cell.decision.lines_per_farm},
                                  {"lp_pipes_per_farm", cell.decision.lp_pipes_per_farm},
                                  {"hp_pipes", cell.decision.hp_pipes},
                                  {"electrolyzers_per_site", cell.decision.electrolyzers_per_site},
                                  {"fuel_cells", cell.decision.fuel_cells}};
            }
            row.push_back(cj);
        }
        grid.push_back(row);
    }
    j["grid"] = grid;
    json ann = json::array();
    for (const auto& a : r.annotations)
        ann.push_back({{"case_a", to_string(a.case_a)},
                       {"case_b", to_string(a.case_b)},
                       {"lo", a.lo},
                       {"hi", a.hi}});
    j["crossover_brackets"] = ann;
    std::ofstream out(file);
    out << j.dump(2) << "\n";
}

void save_sweep_plot_csv(const SweepResult& r, CaseId c, const std::filesystem::path& file) {
    const int ci = r.case_index(c);
    if (ci < 0) throw std::invalid_argument("case not in sweep");
    std::ofstream out(file);
    out << to_string(r.spec.axis) << ",net_benefit_usd\n";
    for (std::size_t vi = 0; vi < r.spec.values.size(); ++vi) {
        const auto& cell = r.cells[vi][ci];
        if (!cell.ok) continue;
        out << fmt_full(r.spec.values[vi]) << "," << fmt_full(cell.net_benefit_usd) << "\n";
    }
}

std::uint64_t stable_hash(const std::vector<std::filesystem::path>& files,
                          const std::vector<std::string>& extra) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](const char* data, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(data[i]);
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) continue;
        char buf[4096];
        while (in.read(buf, sizeof buf) || in.gcount() > 0) {
            mix(buf, static_cast<std::size_t>(in.gcount()));
            if (!in) break;
        }
        mix("|", 1);
    }
    for (const auto& s : extra) {
        mix(s.data(), s.size());
        mix("|", 1);
    }
    return h;
}

}  // namespace windshore
