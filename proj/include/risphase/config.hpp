#pragma once

// JSON form of a scenario plus evaluation settings:
// {"n", "p", "a", "scheme", "k", "method", "mc": {"slow", "fast", "seed"}}.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "analytic.hpp"
#include "model.hpp"
#include "montecarlo.hpp"

namespace risphase {

using Json = nlohmann::ordered_json;

inline std::string_view to_string(analytic::CapacityMethod method) {
    return method == analytic::CapacityMethod::ExactHankel ? "exact" : "approx";
}

inline analytic::CapacityMethod method_from_string(std::string_view name) {
    if (name == "exact") {
        return analytic::CapacityMethod::ExactHankel;
    }
    if (name == "approx") {
        return analytic::CapacityMethod::ApproxEi;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected exact|approx)");
}

struct RunConfig {
    Scenario scenario;
    analytic::CapacityMethod method = analytic::CapacityMethod::ApproxEi;
    long long slow_samples = 2000;
    long long fast_samples = 10000;
    std::uint64_t seed = 1;

    mc::McConfig mc_config() const { return {scenario, slow_samples, fast_samples, seed}; }

    void validate() const { mc_config().validate(); }
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

inline long long json_integer(const Json& v, const char* key, long long lo, long long hi) {
    if (!v.is_number_integer()) {
        schema_error(std::string("'") + key + "' must be an integer");
    }
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
        schema_error(std::string("'") + key + "' is out of range");
    }
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
        schema_error(std::string("'") + key + "' is out of range");
    }
    return x;
}

inline double json_number(const Json& v, const char* key) {
    if (!v.is_number()) {
        schema_error(std::string("'") + key + "' must be a number");
    }
    return v.get<double>();
}

inline std::uint64_t json_seed(const Json& v) {
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<long long>() >= 0) {
        return static_cast<std::uint64_t>(v.get<long long>());
    }
    schema_error("'mc.seed' must be a non-negative integer");
}

} // namespace detail

/// Overlays the keys present in `j` onto `base`; unknown keys and ill-typed
/// values are rejected. The merged result is not validated.
inline RunConfig merge_config(RunConfig base, const Json& j) {
    using detail::schema_error;
    if (!j.is_object()) {
        schema_error("top level must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "n") {
            base.scenario.n_elements = static_cast<int>(detail::json_integer(value, "n", 1, 1 << 20));
        } else if (key == "p") {
            if (value.is_array()) {
                std::vector<double> probs;
                for (const auto& x : value) {
                    probs.push_back(detail::json_number(x, "p[]"));
                }
                base.scenario.link_probs = std::move(probs);
            } else {
                base.scenario.link_probs = detail::json_number(value, "p");
            }
        } else if (key == "a") {
            base.scenario.los_amplitude = detail::json_number(value, "a");
        } else if (key == "scheme") {
            if (!value.is_string()) {
                schema_error("'scheme' must be a string");
            }
            base.scenario.scheme = scheme_from_string(value.get<std::string>());
        } else if (key == "k") {
            base.scenario.quant_levels = static_cast<int>(detail::json_integer(value, "k", 2, 1 << 20));
        } else if (key == "method") {
            if (!value.is_string()) {
                schema_error("'method' must be a string");
            }
            base.method = method_from_string(value.get<std::string>());
        } else if (key == "mc") {
            if (!value.is_object()) {
                schema_error("'mc' must be an object");
            }
            for (const auto& [mkey, mvalue] : value.items()) {
                if (mkey == "slow") {
                    base.slow_samples = detail::json_integer(mvalue, "mc.slow", 1, std::numeric_limits<long long>::max());
                } else if (mkey == "fast") {
                    base.fast_samples = detail::json_integer(mvalue, "mc.fast", 1, std::numeric_limits<long long>::max());
                } else if (mkey == "seed") {
                    base.seed = detail::json_seed(mvalue);
                } else {
                    schema_error("unknown key 'mc." + mkey + "'");
                }
            }
        } else {
            schema_error("unknown key '" + key + "'");
        }
    }
    return base;
}

inline RunConfig config_from_json(const Json& j) {
    auto cfg = merge_config(RunConfig{}, j);
    cfg.validate();
    return cfg;
}

inline Json to_json(const Scenario& s) {
    Json j;
    j["n"] = s.n_elements;
    if (s.uniform()) {
        j["p"] = std::get<double>(s.link_probs);
    } else {
        j["p"] = std::get<std::vector<double>>(s.link_probs);
    }
    j["a"] = s.los_amplitude;
    j["scheme"] = std::string(to_string(s.scheme));
    j["k"] = s.quant_levels;
    return j;
}

inline Json to_json(const RunConfig& cfg) {
    Json j = to_json(cfg.scenario);
    j["method"] = std::string(to_string(cfg.method));
    j["mc"] = {{"slow", cfg.slow_samples}, {"fast", cfg.fast_samples}, {"seed", cfg.seed}};
    return j;
}

} // namespace risphase
