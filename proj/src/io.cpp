#include "rwre/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rwre {

namespace {

void apply_override(Json& cfg, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::runtime_error("override must look like key.path=value: " + kv);
    std::string path = kv.substr(0, eq);
    std::string raw = kv.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(raw);
    } catch (...) {
        value = raw;  // unquoted strings
    }
    Json* node = &cfg;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    (*node)[parts.back()] = value;
}

}  // namespace

Json load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config: " + path);
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    for (const auto& kv : overrides) apply_override(cfg, kv);
    return cfg;
}

std::string config_hash(const Json& config) {
    std::string s = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

Site site_from_json(const Json& arr, const std::string& field) {
    if (!arr.is_array() || arr.empty() || arr.size() > std::size_t(kMaxDim))
        throw std::runtime_error(field + ": expected an integer vector of dimension 1.." +
                                 std::to_string(kMaxDim));
    Site s(int(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number_integer())
            throw std::runtime_error(field + "[" + std::to_string(i) + "]: expected an integer");
        s.c[i] = arr[i].get<std::int64_t>();
    }
    return s;
}

namespace {

TransitionVector tv_from_json(const Json& arr, int d, const std::string& field) {
    if (!arr.is_array() || int(arr.size()) != 2 * d)
        throw std::runtime_error(field + ": expected " + std::to_string(2 * d) + " probabilities");
    std::vector<double> p;
    for (const auto& v : arr) p.push_back(v.get<double>());
    return TransitionVector::from(p);
}

}  // namespace

EnvironmentSpec environment_from_json(const Json& env, const std::string& prefix) {
    EnvironmentSpec spec;
    if (!env.is_object()) throw std::runtime_error(prefix + ": expected an object");
    std::string kind = env.value("kind", std::string{});
    if (kind == "homogeneous")
        spec.kind = EnvKind::Homogeneous;
    else if (kind == "iid-continuous")
        spec.kind = EnvKind::IidContinuous;
    else if (kind == "iid-finite-alphabet")
        spec.kind = EnvKind::IidFiniteAlphabet;
    else if (kind == "markov-finite-alphabet")
        spec.kind = EnvKind::MarkovFiniteAlphabet;
    else
        throw std::runtime_error(prefix + ".kind: unknown kind '" + kind + "'");
    spec.d = env.value("d", 2);
    if (spec.d < 2 || spec.d > kMaxDim) throw std::runtime_error(prefix + ".d: out of range");
    spec.kappa = env.value("kappa", 0.0);
    if (!(spec.kappa > 0 && spec.kappa <= 1.0 / (4.0 * spec.d)))
        throw std::runtime_error(prefix + ".kappa: must lie in (0, 1/(4d)]");
    if (env.contains("alphabet")) {
        for (std::size_t i = 0; i < env["alphabet"].size(); ++i)
            spec.alphabet.push_back(tv_from_json(env["alphabet"][i], spec.d,
                                                 prefix + ".alphabet[" + std::to_string(i) + "]"));
    }
    if (env.contains("weights")) spec.weights = env["weights"].get<std::vector<double>>();
    spec.dirichlet_alpha = env.value("dirichlet_alpha", 1.0);
    if (env.contains("interaction")) {
        const Json& it = env["interaction"];
        Interaction inter;
        inter.range = it.value("range", 1);
        inter.C = it.value("C", 1.0);
        inter.g = it.value("g", 1.0);
        inter.coupling = it.value("coupling", 1.0);
        spec.interaction = inter;
    }
    spec.seed = env.value("seed", std::uint64_t(0));
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(prefix + ": " + e.what());
    }
    return spec;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_manifest(const std::filesystem::path& dir, const Json& config, double wall_seconds) {
    Json m;
    m["config_hash"] = config_hash(config);
    m["seed"] = config.value("seed", std::uint64_t(0));
    m["workers"] = config.value("workers", 1);
    m["version"] = "1.0.0";
    m["wall_time_s"] = wall_seconds;
    std::ofstream out(dir / "manifest.json");
    out << m.dump(2) << "\n";
}

}  // namespace rwre
