#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "windshore/dispatch.hpp"
#include "windshore/model.hpp"
#include "windshore/sizing.hpp"
#include "windshore/sweeps.hpp"

namespace windshore {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::vector<ValidationIssue> list)
        : std::runtime_error(what), issues(std::move(list)) {}
    std::vector<ValidationIssue> issues;
};

inline constexpr int kSchemaVersion = 1;

/// Scenario/catalog configuration files: JSON key-value documents carrying a
/// schema_version field. Unknown keys are rejected with their path.
Scenario load_scenario(const std::filesystem::path& file);
ComponentCatalog load_catalog(const std::filesystem::path& file);
void save_scenario(const Scenario& s, const std::filesystem::path& file);
void save_catalog(const ComponentCatalog& c, const std::filesystem::path& file);

/// Day-profile CSV: header "hour,cf_farm1,...,cf_farmN,lmp" with 24 data
/// rows. Parse errors carry row/column positions.
DayProfile load_day_profile(const std::filesystem::path& file);
void save_day_profile(const DayProfile& day, const std::filesystem::path& file);

/// Deterministic seeded synthetic day: diurnal capacity-factor sinusoid with
/// bounded per-farm noise, clipped to [0,1], and an evening-peaking price
/// sinusoid. Identical arguments give bit-identical profiles.
DayProfile generate_synthetic_day(unsigned seed, int farms, double mean_cf,
                                  double lmp_mean, double lmp_amplitude);

/// Sizing report serialization; the reader reproduces the written decision
/// exactly (round-trip invariant).
void save_sizing_report(const SizingOutcome& outcome, CaseId c,
                        const std::filesystem::path& file);
SizingDecision load_sizing_decision(const std::filesystem::path& file);

std::string sizing_table_text(const ThreeCaseReport& report);
std::string sizing_table_text(CaseId c, const SizingOutcome& outcome);

/// Hourly dispatch profile CSV (hour, delivered, storage level, per-leg flows).
void save_dispatch_csv(const DispatchResult& r, const std::filesystem::path& file);

/// Sweep outputs: the paper-style table CSV (benefits in billions, one
/// decimal), the full-precision JSON with sizing detail, and per-case
/// two-column plot CSVs.
void save_sweep_table_csv(const SweepResult& r, const std::filesystem::path& file);
void save_sweep_json(const SweepResult& r, const std::filesystem::path& file);
void save_sweep_plot_csv(const SweepResult& r, CaseId c, const std::filesystem::path& file);

/// 64-bit FNV-1a over file bytes and strings; stable across runs for the
/// output manifest's config hash.
std::uint64_t stable_hash(const std::vector<std::filesystem::path>& files,
                          const std::vector<std::string>& extra);

}  // namespace windshore
