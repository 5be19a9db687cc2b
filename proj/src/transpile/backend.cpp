#include "qdp/transpile/backend.hpp"

#include "qdp/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>

#ifndef QDP_DEFAULT_BACKEND_DIR
#define QDP_DEFAULT_BACKEND_DIR "data/backends"
#endif

namespace qdp::transpile {

using nlohmann::json;

bool BackendModel::supports(std::string_view gate) const {
    return gate == "measure" || native_gates.count(std::string(gate)) > 0;
}

void BackendModel::validate() const {
    if (qubit_count == 0) {
        throw ConfigError("backend '" + name + "' has no qubits");
    }
    if (gate_time_seconds && !(*gate_time_seconds > 0.0)) {
        throw ConfigError("backend '" + name + "' gate time must be positive");
    }
    if (!coupling_map) {
        return;
    }
    std::vector<std::vector<std::size_t>> adj(qubit_count);
    for (const auto& [a, b] : *coupling_map) {
        if (a >= qubit_count || b >= qubit_count || a == b) {
            throw ConfigError("backend '" + name + "' coupling map has a bad pair (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
        }
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(qubit_count, false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const auto u = todo.front();
        todo.pop();
        for (const auto w : adj[u]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                todo.push(w);
            }
        }
    }
    if (reached != qubit_count) {
        throw ConfigError("backend '" + name + "' coupling map is disconnected");
    }
}

BackendModel parse_backend(std::string_view json_text) {
    BackendModel b;
    try {
        const auto j = json::parse(json_text);
        b.name = j.at("name").get<std::string>();
        b.qubit_count = j.at("qubit_count").get<std::size_t>();
        for (const auto& g : j.at("native_gates")) {
            b.native_gates.insert(g.get<std::string>());
        }
        const auto& cm = j.at("coupling_map");
        if (cm.is_string()) {
            if (cm.get<std::string>() != "all") {
                throw ConfigError("coupling_map string must be \"all\"");
            }
        } else {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (const auto& p : cm) {
                pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
            }
            b.coupling_map = std::move(pairs);
        }
        if (j.contains("gate_time_ns") && !j.at("gate_time_ns").is_null()) {
            b.gate_time_seconds = j.at("gate_time_ns").get<double>() * 1e-9;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed backend description: ") + e.what());
    }
    b.validate();
    return b;
}

BackendModel load_backend(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open backend file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_backend(ss.str());
}

std::string backend_to_json(const BackendModel& backend) {
    json j;
    j["name"] = backend.name;
    j["qubit_count"] = backend.qubit_count;
    j["native_gates"] = backend.native_gates;
    if (backend.coupling_map) {
        json pairs = json::array();
        for (const auto& [a, b] : *backend.coupling_map) {
            pairs.push_back({a, b});
        }
        j["coupling_map"] = pairs;
    } else {
        j["coupling_map"] = "all";
    }
    j["gate_time_ns"] = backend.gate_time_seconds ? json(*backend.gate_time_seconds * 1e9) : json(nullptr);
    return j.dump(2);
}

std::filesystem::path default_backend_dir() {
    if (const char* env = std::getenv("QDP_BACKEND_DIR"); env && *env) {
        return env;
    }
    return QDP_DEFAULT_BACKEND_DIR;
}

BackendModel resolve_backend(std::string_view name_or_path, const std::filesystem::path& preset_dir) {
    const std::filesystem::path preset = preset_dir / (std::string(name_or_path) + ".json");
    if (std::filesystem::is_regular_file(preset)) {
        return load_backend(preset);
    }
    const std::filesystem::path direct{std::string(name_or_path)};
    if (std::filesystem::is_regular_file(direct)) {
        return load_backend(direct);
    }
    throw ConfigError("unknown backend '" + std::string(name_or_path) + "'");
}

}  // namespace qdp::transpile
