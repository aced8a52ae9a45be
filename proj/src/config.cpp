#include "fracgp/config.hpp"

#include <cstdint>
#include <fstream>
#include <set>

#include "fracgp/common.hpp"

namespace fracgp {

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key))
            throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

double require_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError("missing key \"" + key + "\" in " + where);
    if (!j.at(key).is_number()) throw ConfigError("key \"" + key + "\" in " + where + " must be numeric");
    return j.at(key).get<double>();
}

}  // namespace

json kernel_to_json(const KernelSpec& spec) {
    json j;
    j["family"] = spec.family_name();
    switch (spec.family) {
        case KernelFamily::SquaredExponential:
            j["a"] = spec.a;
            break;
        case KernelFamily::Matern:
            j["nu"] = spec.nu;
            j["a"] = spec.a;
            break;
        case KernelFamily::RationalQuadratic:
            j["nu"] = spec.nu;
            j["ell"] = spec.ell;
            break;
    }
    return j;
}

KernelSpec kernel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("kernel must be an object with a \"family\" key");
    const std::string family = j.at("family").get<std::string>();
    if (family == "se") {
        reject_unknown_keys(j, {"family", "a"}, "kernel (se)");
        return KernelSpec::se(require_number(j, "a", "kernel (se)"));
    }
    if (family == "matern") {
        reject_unknown_keys(j, {"family", "nu", "a"}, "kernel (matern)");
        return KernelSpec::matern(require_number(j, "nu", "kernel (matern)"),
                                  require_number(j, "a", "kernel (matern)"));
    }
    if (family == "rq") {
        reject_unknown_keys(j, {"family", "nu", "ell"}, "kernel (rq)");
        return KernelSpec::rq(require_number(j, "nu", "kernel (rq)"),
                              require_number(j, "ell", "kernel (rq)"));
    }
    throw ConfigError("unknown kernel family \"" + family + "\" (se | matern | rq)");
}

ExperimentConfig config_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"kernel", "dim", "T", "lambda", "alpha", "saturation_D", "candidates",
                         "seeds", "objective"},
                        "config");
    ExperimentConfig c;
    if (!j.contains("kernel")) throw ConfigError("config: missing \"kernel\"");
    c.kernel = kernel_from_json(j.at("kernel"));
    c.dim = j.value("dim", 1);
    if (!j.contains("T")) throw ConfigError("config: missing \"T\"");
    c.T = j.at("T").get<int>();
    c.lambda = require_number(j, "lambda", "config");

    if (j.contains("alpha")) {
        const json& a = j.at("alpha");
        reject_unknown_keys(a, {"mode", "value", "c_eps", "q", "matern_log_exponent"},
                            "config.alpha");
        const std::string mode = a.value("mode", "schedule");
        if (mode == "fixed") {
            c.alpha_fixed = true;
            c.alpha_value = require_number(a, "value", "config.alpha");
        } else if (mode == "schedule") {
            c.alpha_fixed = false;
            if (a.contains("value")) throw ConfigError("config.alpha: \"value\" needs mode \"fixed\"");
        } else {
            throw ConfigError("config.alpha.mode must be \"fixed\" or \"schedule\"");
        }
        c.c_eps = a.value("c_eps", 1.0);
        c.q = a.value("q", 0.0);
        if (a.contains("matern_log_exponent"))
            c.matern_log_exponent = a.at("matern_log_exponent").get<double>();
    }

    c.saturation_D = j.value("saturation_D", 1.0);

    if (j.contains("candidates")) {
        const json& cd = j.at("candidates");
        reject_unknown_keys(cd, {"m", "generator", "m_max"}, "config.candidates");
        c.candidate_m = cd.value("m", 0);
        const std::string gen = cd.value("generator", "low-discrepancy");
        if (gen == "grid")
            c.generator = CandidateGenerator::Grid;
        else if (gen == "low-discrepancy")
            c.generator = CandidateGenerator::LowDiscrepancy;
        else
            throw ConfigError("config.candidates.generator must be \"grid\" or \"low-discrepancy\"");
        c.m_max = cd.value("m_max", 1 << 20);
    }

    if (j.contains("seeds")) {
        if (!j.at("seeds").is_array()) throw ConfigError("config.seeds must be an array");
        c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
    }

    if (j.contains("objective")) {
        const json& o = j.at("objective");
        reject_unknown_keys(o, {"n_centers_per_dim", "target_norm", "seed", "locate_resolution"},
                            "config.objective");
        c.objective.n_centers_per_dim = o.value("n_centers_per_dim", 10);
        c.objective.target_norm = o.value("target_norm", 2.0);
        if (o.contains("seed")) c.objective.seed = o.at("seed").get<uint64_t>();
        c.objective.locate_resolution = o.value("locate_resolution", 2048);
    }

    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["kernel"] = kernel_to_json(c.kernel);
    j["dim"] = c.dim;
    j["T"] = c.T;
    j["lambda"] = c.lambda;
    json a;
    a["mode"] = c.alpha_fixed ? "fixed" : "schedule";
    if (c.alpha_fixed) a["value"] = c.alpha_value;
    a["c_eps"] = c.c_eps;
    a["q"] = c.q;
    if (c.matern_log_exponent) a["matern_log_exponent"] = *c.matern_log_exponent;
    j["alpha"] = a;
    j["saturation_D"] = c.saturation_D;
    j["candidates"] = {{"m", c.candidate_m},
                       {"generator", c.generator == CandidateGenerator::Grid ? "grid" : "low-discrepancy"},
                       {"m_max", c.m_max}};
    j["seeds"] = c.seeds;
    json o;
    o["n_centers_per_dim"] = c.objective.n_centers_per_dim;
    o["target_norm"] = c.objective.target_norm;
    if (c.objective.seed) o["seed"] = *c.objective.seed;
    o["locate_resolution"] = c.objective.locate_resolution;
    j["objective"] = o;
    return j;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& config) {
    const std::string dump = config_to_json(config).dump();  // keys sorted by the json object
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

json objective_to_json(const RKHSFunction& f) {
    json j;
    j["kernel"] = kernel_to_json(f.spec);
    j["dim"] = f.dim;
    j["centers"] = f.centers;
    j["coeffs"] = f.coeffs;
    j["norm"] = f.norm;
    j["x0"] = f.x_max;
    j["value0"] = f.f_max;
    j["locate_residual"] = f.locate_residual;
    j["seed"] = f.seed;
    return j;
}

RKHSFunction objective_from_json(const json& j) {
    RKHSFunction f;
    f.spec = kernel_from_json(j.at("kernel"));
    f.dim = j.at("dim").get<int>();
    f.centers = j.at("centers").get<std::vector<double>>();
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    f.norm = j.at("norm").get<double>();
    f.x_max = j.at("x0").get<std::vector<double>>();
    f.f_max = j.at("value0").get<double>();
    f.locate_residual = j.at("locate_residual").get<double>();
    f.seed = j.at("seed").get<uint64_t>();
    return f;
}

json state_to_json(const PosteriorState& state) {
    json j;
    j["kernel"] = kernel_to_json(state.spec);
    j["dim"] = state.dim;
    j["lambda"] = state.lambda;
    j["alpha"] = state.alpha;
    j["points"] = state.points;
    j["y"] = state.obs;
    return j;
}

PosteriorState state_from_json(const json& j) {
    PosteriorState s = init_state(kernel_from_json(j.at("kernel")), j.at("dim").get<int>(),
                                  j.at("lambda").get<double>(), j.at("alpha").get<double>());
    const auto points = j.at("points").get<std::vector<double>>();
    const auto y = j.at("y").get<std::vector<double>>();
    const int t = static_cast<int>(y.size());
    for (int i = 0; i < t; ++i)
        s = incorporate(std::move(s), points.data() + static_cast<size_t>(i) * s.dim, y[i]);
    return s;
}

}  // namespace fracgp
