#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pamea/core.hpp"
#include "pamea/engine.hpp"

namespace pamea {

/// Harness-level name for the engine's search variants.
using AblationVariant = SearchVariant;

/// File-system or serialization failure (CLI exit code 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid statistical input, e.g. too few records to compare (exit code 4).
struct StatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything needed to describe and reproduce one run. Persisted as three
/// files sharing a base name: <base>.json (config, provenance, indicator
/// scalars, full trajectory), <base>.traj.csv (fe,igd,hv,mean_sparsity rows)
/// and <base>.pop.csv (final population). The two CSVs are byte-deterministic
/// for a fixed config and seed; wall_seconds lives only in the JSON.
struct RunRecord {
    int schema_version = 1;
    std::string code_hash;
    std::string problem_id;
    std::size_t dimension = 0;
    SearchVariant variant = SearchVariant::full;
    PameaConfig config;
    std::size_t igd_reference_points = 0;
    ObjectiveVector hv_reference{1.0, 1.0};
    std::size_t log_every = 1;
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
    double wall_seconds = 0.0;
    double final_igd = 0.0; // always against the canonical 10,000-point front
    double final_hv = 0.0;
    double final_mean_sparsity = 0.0;
    double gen0_igd = 0.0; // against the run's configured reference
    std::vector<TrajectoryPoint> trajectory;
    Population final_population;
};

/// Code-version hash baked in at build time ("unknown" outside a git tree).
std::string code_hash();

/// File-name-safe base: sanitized problem id + variant + seed.
std::string record_basename(std::string_view problem_id, SearchVariant variant,
                            std::uint64_t seed);

/// Writes <base>.json / <base>.traj.csv / <base>.pop.csv into `directory`.
/// Returns the base name used. Throws IoError when files cannot be written.
std::string write_record(const RunRecord& record,
                         const std::filesystem::path& directory);

/// Reads a record's JSON file; the final population is not reloaded (it lives
/// in the population CSV). Throws IoError on missing or malformed input.
RunRecord read_record(const std::filesystem::path& json_path);

/// Reads a population CSV written by write_record.
Population read_population_csv(const std::filesystem::path& csv_path);

/// Shortest round-trip decimal representation; deterministic across runs.
std::string format_double(double value);

} // namespace pamea
