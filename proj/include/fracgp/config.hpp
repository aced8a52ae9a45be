#pragma once

// JSON config parsing (fail-closed: unknown keys are rejected), canonical
// serialization and hashing, plus the JSON records for objectives and
// posterior-state snapshots.

#include <string>

#include "fracgp/objectives.hpp"
#include "fracgp/posterior.hpp"
#include "fracgp/ts_loop.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace fracgp {

using json = nlohmann::json;

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::string& path);

// FNV-1a over the canonical (key-sorted) dump; stable under key reordering.
std::string config_hash(const ExperimentConfig& config);

json kernel_to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const json& j);

json objective_to_json(const RKHSFunction& f);
RKHSFunction objective_from_json(const json& j);

// Snapshot of (spec, lambda, alpha, A_t, y); the factor is recomputed on load.
json state_to_json(const PosteriorState& state);
PosteriorState state_from_json(const json& j);

}  // namespace fracgp
