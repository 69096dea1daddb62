#pragma once

// Run configuration: a JSON file with three sections plus a few scalars.
// Unknown keys anywhere are a hard error that names the key. Every value is
// validated with a message naming the offending key. Schema (all keys
// optional, defaults shown):
//
// {
//   "seed": 42,
//   "out": "",                       // output path; subcommands require it as needed
//   "parallelism": 1,
//   "trial": {
//     "n": 300,
//     "delta_nr": 0.5,
//     "delta_placebo": 1.0,
//     "sigma_eps": 1.0,
//     "p_l": 0.5,
//     "active_frac_stage1": 0.3333333333333333,
//     "active_frac_stage2": 0.5,
//     "responder_quantile": 0.5,
//     "weight_w": 0.5
//   },
//   "classifier": { "kind": "quantile-change", "p_r": 0.5 },
//     // kinds: quantile-change (p_r), fixed-threshold-change (c),
//     //        fixed-threshold-level (c), oracle
//   "grid": {
//     "delta_all": 0.0,
//     "delta_placebo_values": [0.0, 0.5, 1.0],
//     "sigma_values": [0.1, 1.0, 2.0, 5.0],
//     "n_reps": 2000,
//     "classifiers": ["quantile-change", "oracle"]
//   }
// }
//
// Seed precedence: --seed flag > SPCD_SEED environment variable > config file.

#include <cstdint>
#include <string>

#include "spcd/montecarlo.hpp"

namespace spcd {

struct RunConfig {
    TrialParams trial;
    ClassifierSpec classifier = ClassifierSpec::quantile_change(0.5);
    GridSpec grid;
    std::uint64_t seed = 42;
    std::string out;
    unsigned parallelism = 1;

    bool operator==(const RunConfig& other) const;

    void validate() const;
};

// Desk-scale defaults used when no config file is given.
RunConfig default_config();

// Parse from JSON text / file. Unknown keys raise ConfigError with the key path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical JSON serialization; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

// Apply the seed precedence rule. cli_seed of -1 means the flag was absent.
void apply_seed_overrides(RunConfig& config, const char* env_value, long long cli_seed);

}  // namespace spcd
