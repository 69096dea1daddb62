#include "spcd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "spcd/errors.hpp"

namespace spcd {

namespace {

using json = nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& section) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + section + key + "'");
        }
    }
}

double get_number(const json& object, const char* key, double fallback,
                  const std::string& section) {
    if (!object.contains(key)) return fallback;
    const json& v = object.at(key);
    if (!v.is_number()) {
        throw ConfigError("config key '" + section + key + "' must be a number");
    }
    return v.get<double>();
}

ClassifierSpec parse_classifier(const json& node, double default_p_r,
                                const std::string& section) {
    std::string kind;
    const json* object = nullptr;
    if (node.is_string()) {
        kind = node.get<std::string>();
    } else if (node.is_object()) {
        object = &node;
        if (!node.contains("kind") || !node.at("kind").is_string()) {
            throw ConfigError("config key '" + section + "kind' must be a string");
        }
        kind = node.at("kind").get<std::string>();
    } else {
        throw ConfigError("config key '" + section.substr(0, section.size() - 1) +
                          "' must be a string or an object");
    }

    try {
        if (kind == "quantile-change") {
            double p_r = default_p_r;
            if (object) {
                reject_unknown_keys(*object, {"kind", "p_r"}, section);
                p_r = get_number(*object, "p_r", default_p_r, section);
            }
            return ClassifierSpec::quantile_change(p_r);
        }
        if (kind == "oracle") {
            if (object) reject_unknown_keys(*object, {"kind"}, section);
            return ClassifierSpec::oracle();
        }
        if (kind == "fixed-threshold-change" || kind == "fixed-threshold-level") {
            if (!object || !object->contains("c")) {
                throw ConfigError("config key '" + section + "c' is required for kind '" + kind +
                                  "'");
            }
            reject_unknown_keys(*object, {"kind", "c"}, section);
            const double c = get_number(*object, "c", 0.0, section);
            return kind == "fixed-threshold-change" ? ClassifierSpec::fixed_change(c)
                                                    : ClassifierSpec::fixed_level(c);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config key '" + section + "': " + e.what());
    }
    throw ConfigError("config key '" + section + "kind': unknown classifier kind '" + kind + "'");
}

json classifier_to_json(const ClassifierSpec& spec) {
    json node;
    node["kind"] = spec.name();
    switch (spec.kind) {
        case ClassifierKind::kQuantileChange:
            node["p_r"] = spec.p_r;
            break;
        case ClassifierKind::kFixedThresholdChange:
        case ClassifierKind::kFixedThresholdLevel:
            node["c"] = spec.c;
            break;
        case ClassifierKind::kOracle:
            break;
    }
    return node;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
    return trial == other.trial && classifier == other.classifier && grid == other.grid &&
           seed == other.seed && out == other.out && parallelism == other.parallelism;
}

void RunConfig::validate() const {
    try {
        trial.validate();
        classifier.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
    GridSpec full = grid;
    full.base = trial;
    full.master_seed = seed;
    try {
        full.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid grid config: ") + e.what());
    }
    if (parallelism < 1) throw ConfigError("config key 'parallelism' must be >= 1");
}

RunConfig default_config() {
    RunConfig config;
    config.trial = TrialParams{};
    config.classifier = ClassifierSpec::quantile_change(config.trial.responder_quantile);
    config.grid.base = config.trial;
    config.grid.delta_all = 0.0;
    config.grid.delta_placebo_values = {0.0, 0.5, 1.0};
    config.grid.sigma_values = {0.1, 1.0, 2.0, 5.0};
    config.grid.n_reps = 2000;
    config.grid.master_seed = config.seed;
    config.grid.classifiers = {ClassifierSpec::quantile_change(config.trial.responder_quantile),
                               ClassifierSpec::oracle()};
    return config;
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(root, {"seed", "out", "parallelism", "trial", "classifier", "grid"}, "");

    RunConfig config = default_config();

    if (root.contains("seed")) {
        const json& v = root.at("seed");
        if (!v.is_number_unsigned()) {
            throw ConfigError("config key 'seed' must be a non-negative integer");
        }
        config.seed = v.get<std::uint64_t>();
    }
    if (root.contains("out")) {
        const json& v = root.at("out");
        if (!v.is_string()) throw ConfigError("config key 'out' must be a string");
        config.out = v.get<std::string>();
    }
    if (root.contains("parallelism")) {
        const json& v = root.at("parallelism");
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
            throw ConfigError("config key 'parallelism' must be a positive integer");
        }
        config.parallelism = v.get<unsigned>();
    }

    if (root.contains("trial")) {
        const json& trial = root.at("trial");
        if (!trial.is_object()) throw ConfigError("config key 'trial' must be an object");
        reject_unknown_keys(trial,
                            {"n", "delta_nr", "delta_placebo", "sigma_eps", "p_l",
                             "active_frac_stage1", "active_frac_stage2", "responder_quantile",
                             "weight_w"},
                            "trial.");
        TrialParams& p = config.trial;
        if (trial.contains("n")) {
            const json& v = trial.at("n");
            if (!v.is_number_unsigned()) {
                throw ConfigError("config key 'trial.n' must be a non-negative integer");
            }
            p.n = v.get<std::size_t>();
        }
        p.delta_nr = get_number(trial, "delta_nr", p.delta_nr, "trial.");
        p.delta_placebo = get_number(trial, "delta_placebo", p.delta_placebo, "trial.");
        p.sigma_eps = get_number(trial, "sigma_eps", p.sigma_eps, "trial.");
        p.p_l = get_number(trial, "p_l", p.p_l, "trial.");
        p.active_frac_stage1 = get_number(trial, "active_frac_stage1", p.active_frac_stage1, "trial.");
        p.active_frac_stage2 = get_number(trial, "active_frac_stage2", p.active_frac_stage2, "trial.");
        p.responder_quantile = get_number(trial, "responder_quantile", p.responder_quantile, "trial.");
        p.weight_w = get_number(trial, "weight_w", p.weight_w, "trial.");
    }

    if (root.contains("classifier")) {
        config.classifier =
            parse_classifier(root.at("classifier"), config.trial.responder_quantile, "classifier.");
    } else {
        config.classifier = ClassifierSpec::quantile_change(config.trial.responder_quantile);
    }

    bool classifiers_given = false;
    if (root.contains("grid")) {
        const json& grid = root.at("grid");
        if (!grid.is_object()) throw ConfigError("config key 'grid' must be an object");
        reject_unknown_keys(
            grid, {"delta_all", "delta_placebo_values", "sigma_values", "n_reps", "classifiers"},
            "grid.");
        config.grid.delta_all = get_number(grid, "delta_all", config.grid.delta_all, "grid.");
        auto read_values = [&](const char* key, std::vector<double>& dest) {
            if (!grid.contains(key)) return;
            const json& v = grid.at(key);
            if (!v.is_array() || v.empty()) {
                throw ConfigError(std::string("config key 'grid.") + key +
                                  "' must be a non-empty array of numbers");
            }
            dest.clear();
            for (const json& item : v) {
                if (!item.is_number()) {
                    throw ConfigError(std::string("config key 'grid.") + key +
                                      "' must contain numbers only");
                }
                dest.push_back(item.get<double>());
            }
        };
        read_values("delta_placebo_values", config.grid.delta_placebo_values);
        read_values("sigma_values", config.grid.sigma_values);
        if (grid.contains("n_reps")) {
            const json& v = grid.at("n_reps");
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
                throw ConfigError("config key 'grid.n_reps' must be a positive integer");
            }
            config.grid.n_reps = v.get<std::size_t>();
        }
        if (grid.contains("classifiers")) {
            classifiers_given = true;
            const json& v = grid.at("classifiers");
            if (!v.is_array() || v.empty()) {
                throw ConfigError("config key 'grid.classifiers' must be a non-empty array");
            }
            config.grid.classifiers.clear();
            for (std::size_t i = 0; i < v.size(); ++i) {
                config.grid.classifiers.push_back(parse_classifier(
                    v[i], config.trial.responder_quantile,
                    "grid.classifiers[" + std::to_string(i) + "]."));
            }
        }
    }
    if (!classifiers_given) {
        // Default classifier pair tracks the configured quantile level.
        config.grid.classifiers = {
            ClassifierSpec::quantile_change(config.trial.responder_quantile),
            ClassifierSpec::oracle()};
    }

    config.grid.base = config.trial;
    config.grid.master_seed = config.seed;
    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& config) {
    json root;
    root["seed"] = config.seed;
    root["out"] = config.out;
    root["parallelism"] = config.parallelism;
    json trial;
    trial["n"] = config.trial.n;
    trial["delta_nr"] = config.trial.delta_nr;
    trial["delta_placebo"] = config.trial.delta_placebo;
    trial["sigma_eps"] = config.trial.sigma_eps;
    trial["p_l"] = config.trial.p_l;
    trial["active_frac_stage1"] = config.trial.active_frac_stage1;
    trial["active_frac_stage2"] = config.trial.active_frac_stage2;
    trial["responder_quantile"] = config.trial.responder_quantile;
    trial["weight_w"] = config.trial.weight_w;
    root["trial"] = trial;
    root["classifier"] = classifier_to_json(config.classifier);
    json grid;
    grid["delta_all"] = config.grid.delta_all;
    grid["delta_placebo_values"] = config.grid.delta_placebo_values;
    grid["sigma_values"] = config.grid.sigma_values;
    grid["n_reps"] = config.grid.n_reps;
    grid["classifiers"] = json::array();
    for (const ClassifierSpec& c : config.grid.classifiers) {
        grid["classifiers"].push_back(classifier_to_json(c));
    }
    root["grid"] = grid;
    return root.dump(2) + "\n";
}

void apply_seed_overrides(RunConfig& config, const char* env_value, long long cli_seed) {
    if (env_value != nullptr && *env_value != '\0') {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env_value, &end, 10);
        if (end == nullptr || *end != '\0') {
            throw ConfigError("SPCD_SEED must be an unsigned integer, got '" +
                              std::string(env_value) + "'");
        }
        config.seed = static_cast<std::uint64_t>(parsed);
    }
    if (cli_seed >= 0) {
        config.seed = static_cast<std::uint64_t>(cli_seed);
    }
    config.grid.master_seed = config.seed;
}

}  // namespace spcd
