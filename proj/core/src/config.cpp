// Copyright 2026 The dqtrl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqtrl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dqtrl/errors.hpp"

namespace dqtrl {

using nlohmann::json;

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::kClassicalBaseline:
        return "classical-baseline";
    case Mode::kQtrlCentric:
        return "qtrl-centric";
    case Mode::kQtrlDistributed:
        return "qtrl-distributed";
    }
    return "unknown";
}

Mode parse_mode(const std::string& name) {
    for (Mode m : {Mode::kClassicalBaseline, Mode::kQtrlCentric, Mode::kQtrlDistributed}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ConfigError("unknown mode '" + name +
                      "' (expected classical-baseline, qtrl-centric or qtrl-distributed)");
}

std::string to_string(GradientMethod method) {
    return method == GradientMethod::kAdjoint ? "adjoint" : "parameter-shift";
}

GradientMethod parse_gradient_method(const std::string& name) {
    if (name == "adjoint") {
        return GradientMethod::kAdjoint;
    }
    if (name == "parameter-shift" || name == "shift") {
        return GradientMethod::kParameterShift;
    }
    throw ConfigError("unknown gradient method '" + name + "' (expected adjoint or parameter-shift)");
}

std::size_t ExperimentConfig::effective_agents() const {
    return mode == Mode::kQtrlDistributed ? agents : 1;
}

std::size_t ExperimentConfig::effective_max_rounds() const {
    if (max_rounds) {
        return *max_rounds;
    }
    return mode == Mode::kQtrlDistributed ? 2000 : 5000;
}

void ExperimentConfig::validate() const {
    if (layers < 1) {
        throw ConfigError("layers must be >= 1");
    }
    if (agents < 1) {
        throw ConfigError("agents must be >= 1");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("gamma must lie in [0, 1]");
    }
    if (!(learning_rate > 0.0)) {
        throw ConfigError("learning rate must be > 0");
    }
    if (episodes_per_round < 1) {
        throw ConfigError("episodes_per_round must be >= 1");
    }
    if (!(target_reward > 0.0 && target_reward <= 1.0)) {
        throw ConfigError("target_reward must lie in (0, 1]");
    }
    if (target_window < 1) {
        throw ConfigError("target_window must be >= 1");
    }
    for (std::size_t n : speedup_agents) {
        if (n < 1) {
            throw ConfigError("speedup agent counts must be >= 1");
        }
    }
}

namespace {

template <typename T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

} // namespace

ExperimentConfig parse_config(std::string_view json_text, ExperimentConfig base) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known = {
        "mode", "layers", "agents", "gamma", "learning_rate", "normalize_returns", "optimizer",
        "episodes_per_round", "max_rounds", "target_reward", "target_window", "stop_at_target",
        "seed", "out_dir", "sequential", "activation", "gradient", "speedup_agents"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    ExperimentConfig c = std::move(base);
    if (j.contains("mode")) c.mode = parse_mode(get<std::string>(j, "mode"));
    if (j.contains("layers")) c.layers = get<int>(j, "layers");
    if (j.contains("agents")) c.agents = get<std::size_t>(j, "agents");
    if (j.contains("gamma")) c.gamma = get<double>(j, "gamma");
    if (j.contains("learning_rate")) c.learning_rate = get<double>(j, "learning_rate");
    if (j.contains("normalize_returns")) c.normalize_returns = get<bool>(j, "normalize_returns");
    if (j.contains("optimizer")) c.optimizer = parse_optimizer(get<std::string>(j, "optimizer"));
    if (j.contains("episodes_per_round")) c.episodes_per_round = get<std::size_t>(j, "episodes_per_round");
    if (j.contains("max_rounds")) {
        if (j.at("max_rounds").is_null()) {
            c.max_rounds.reset();
        } else {
            c.max_rounds = get<std::size_t>(j, "max_rounds");
        }
    }
    if (j.contains("target_reward")) c.target_reward = get<double>(j, "target_reward");
    if (j.contains("target_window")) c.target_window = get<std::size_t>(j, "target_window");
    if (j.contains("stop_at_target")) c.stop_at_target = get<bool>(j, "stop_at_target");
    if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
    if (j.contains("out_dir")) c.out_dir = get<std::string>(j, "out_dir");
    if (j.contains("sequential")) c.sequential = get<bool>(j, "sequential");
    if (j.contains("activation")) c.activation = parse_activation(get<std::string>(j, "activation"));
    if (j.contains("gradient")) c.gradient = parse_gradient_method(get<std::string>(j, "gradient"));
    if (j.contains("speedup_agents")) c.speedup_agents = get<std::vector<std::size_t>>(j, "speedup_agents");
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

std::string to_json(const ExperimentConfig& c) {
    json j = {
        {"mode", to_string(c.mode)},
        {"layers", c.layers},
        {"agents", c.agents},
        {"gamma", c.gamma},
        {"learning_rate", c.learning_rate},
        {"normalize_returns", c.normalize_returns},
        {"optimizer", to_string(c.optimizer)},
        {"episodes_per_round", c.episodes_per_round},
        {"target_reward", c.target_reward},
        {"target_window", c.target_window},
        {"stop_at_target", c.stop_at_target},
        {"seed", c.seed},
        {"out_dir", c.out_dir},
        {"sequential", c.sequential},
        {"activation", to_string(c.activation)},
        {"gradient", to_string(c.gradient)},
        {"speedup_agents", c.speedup_agents},
    };
    j["max_rounds"] = c.max_rounds ? json(*c.max_rounds) : json(nullptr);
    return j.dump(2);
}

} // namespace dqtrl
