#include "whk/json_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace whk {

namespace {

[[noreturn]] void bad_config(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

double require_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        bad_config(std::string("missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

std::string require_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        bad_config(std::string("missing string field '") + key + "'");
    }
    return j.at(key).get<std::string>();
}

}  // namespace

Json to_json(const PriorLaw& prior) {
    Json j;
    switch (prior.kind()) {
        case PriorLaw::Kind::Atoms: {
            j["type"] = "atoms";
            Json atoms = Json::array();
            for (const Atom& a : prior.atom_list()) {
                atoms.push_back({{"value", a.value}, {"weight", a.weight}});
            }
            j["atoms"] = std::move(atoms);
            break;
        }
        case PriorLaw::Kind::Gaussian:
            j["type"] = "gaussian";
            j["mean"] = prior.gaussian_mean();
            j["variance"] = prior.gaussian_variance();
            break;
        case PriorLaw::Kind::Uniform:
            j["type"] = "uniform";
            j["lo"] = prior.uniform_lo();
            j["hi"] = prior.uniform_hi();
            break;
    }
    return j;
}

PriorLaw prior_from_json(const Json& j) {
    if (!j.is_object()) bad_config("prior must be an object");
    const std::string type = require_string(j, "type");
    if (type == "atoms") {
        if (!j.contains("atoms") || !j.at("atoms").is_array() || j.at("atoms").empty()) {
            bad_config("atoms prior needs a nonempty 'atoms' array");
        }
        std::vector<Atom> atoms;
        for (const Json& a : j.at("atoms")) {
            atoms.push_back({require_number(a, "value"), require_number(a, "weight")});
        }
        return PriorLaw::atoms(std::move(atoms));
    }
    if (type == "gaussian") {
        return PriorLaw::gaussian(require_number(j, "mean"), require_number(j, "variance"));
    }
    if (type == "uniform") {
        return PriorLaw::uniform(require_number(j, "lo"), require_number(j, "hi"));
    }
    bad_config("unknown prior type '" + type + "'");
}

Json to_json(const DecayFunction& decay) {
    Json j;
    switch (decay.kind()) {
        case DecayFunction::Kind::Constant:
            j["type"] = "constant";
            j["c"] = decay.scale();
            break;
        case DecayFunction::Kind::ExpDecay:
            j["type"] = "exp";
            j["scale"] = decay.scale();
            j["rate"] = decay.rate();
            break;
        case DecayFunction::Kind::PowerDecay:
            j["type"] = "power";
            j["scale"] = decay.scale();
            j["alpha"] = decay.alpha();
            break;
    }
    return j;
}

DecayFunction decay_from_json(const Json& j, double U) {
    if (!j.is_object()) bad_config("decay function must be an object");
    const std::string type = require_string(j, "type");
    if (type == "constant") return DecayFunction::constant(require_number(j, "c"));
    if (type == "exp") {
        return DecayFunction::exp_decay(require_number(j, "scale"), require_number(j, "rate"));
    }
    if (type == "power") {
        return DecayFunction::power_decay(require_number(j, "scale"), U,
                                          require_number(j, "alpha"));
    }
    bad_config("unknown decay type '" + type + "'");
}

Json to_json(const WeightFunction& w) {
    Json j;
    switch (w.kind()) {
        case WeightFunction::Kind::Affine:
            j["type"] = "affine";
            break;
        case WeightFunction::Kind::Power:
            j["type"] = "power";
            j["eta"] = w.eta();
            break;
        case WeightFunction::Kind::Horizon:
            j["type"] = "horizon";
            j["wbar"] = to_json(w.decay());
            break;
        case WeightFunction::Kind::Scaled:
            j["type"] = "scaled";
            j["c"] = w.scale();
            j["inner"] = to_json(w.left());
            break;
        case WeightFunction::Kind::Sum:
            j["type"] = "sum";
            j["left"] = to_json(w.left());
            j["right"] = to_json(w.right());
            break;
        case WeightFunction::Kind::Product:
            j["type"] = "product";
            j["left"] = to_json(w.left());
            j["right"] = to_json(w.right());
            break;
        case WeightFunction::Kind::Custom:
            bad_config("custom weights have no canonical encoding");
    }
    return j;
}

WeightFunction weight_from_json(const Json& j, double U) {
    if (!j.is_object()) bad_config("weight must be an object");
    const std::string type = require_string(j, "type");
    if (type == "affine") return WeightFunction::affine(U);
    if (type == "power") return WeightFunction::power(U, require_number(j, "eta"));
    if (type == "horizon") {
        if (!j.contains("wbar")) bad_config("horizon weight needs 'wbar'");
        return WeightFunction::horizon(decay_from_json(j.at("wbar"), U));
    }
    if (type == "scaled") {
        if (!j.contains("inner")) bad_config("scaled weight needs 'inner'");
        return WeightFunction::scaled(require_number(j, "c"),
                                      weight_from_json(j.at("inner"), U));
    }
    if (type == "sum" || type == "product") {
        if (!j.contains("left") || !j.contains("right")) {
            bad_config(type + " weight needs 'left' and 'right'");
        }
        auto left = weight_from_json(j.at("left"), U);
        auto right = weight_from_json(j.at("right"), U);
        return type == "sum" ? WeightFunction::sum(left, right)
                             : WeightFunction::product(left, right);
    }
    bad_config("unknown weight type '" + type + "'");
}

Json to_json(const TerminalFunction& f) {
    Json j;
    switch (f.kind()) {
        case TerminalFunction::Kind::Quadratic:
            j["type"] = "quadratic";
            break;
        case TerminalFunction::Kind::ExpQuadratic:
            j["type"] = "exp_quadratic";
            break;
        case TerminalFunction::Kind::ExpLinear:
            j["type"] = "exp_linear";
            j["mu"] = f.mu();
            break;
    }
    return j;
}

TerminalFunction terminal_from_json(const Json& j, double U) {
    if (!j.is_object()) bad_config("terminal function must be an object");
    const std::string type = require_string(j, "type");
    if (type == "quadratic") return TerminalFunction::quadratic();
    if (type == "exp_quadratic") return TerminalFunction::exp_quadratic(U);
    if (type == "exp_linear") return TerminalFunction::exp_linear(require_number(j, "mu"));
    bad_config("unknown terminal function type '" + type + "'");
}

Json to_json(const CheckReport& report) {
    Json j;
    j["check_name"] = report.check_name;
    j["passed"] = report.passed;
    j["worst_case"] = report.worst_case;
    j["tolerance"] = report.tolerance;
    j["witness"] = report.witness;
    j["samples_used"] = report.samples_used;
    j["wall_time_s"] = report.wall_time_s;
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

Json to_json(const std::vector<CheckReport>& reports) {
    Json j = Json::array();
    for (const CheckReport& r : reports) j.push_back(to_json(r));
    return j;
}

const InformationModel& ModelConfig::process() const {
    if (const auto* quad = std::get_if<QuadraticModel>(&model)) return quad->process;
    if (const auto* expquad = std::get_if<ExpQuadraticModel>(&model)) return expquad->process();
    return std::get<KernelModel>(model).process();
}

KernelModel ModelConfig::kernel() const {
    if (const auto* quad = std::get_if<QuadraticModel>(&model)) return as_kernel_model(*quad);
    if (const auto* expquad = std::get_if<ExpQuadraticModel>(&model)) {
        return as_kernel_model(*expquad);
    }
    return std::get<KernelModel>(model);
}

ModelConfig model_from_json(const Json& j) {
    if (!j.is_object()) bad_config("model must be an object");
    const std::string family = require_string(j, "family");
    const double sigma = require_number(j, "sigma");
    const double U = require_number(j, "U");
    if (!j.contains("prior")) bad_config("model needs a 'prior'");
    InformationModel process(sigma, U, prior_from_json(j.at("prior")));

    if (family == "quadratic") {
        return ModelConfig{QuadraticModel{std::move(process)}};
    }
    if (family == "expquad") {
        const double eta = require_number(j, "eta");
        if (!j.contains("g0")) bad_config("expquad model needs 'g0'");
        DecayFunction g0 = decay_from_json(j.at("g0"), U);
        bool special = false;
        std::optional<DecayFunction> g1;
        if (!j.contains("g1")) bad_config("expquad model needs 'g1' (object or \"special\")");
        if (j.at("g1").is_string()) {
            if (j.at("g1").get<std::string>() != "special") {
                bad_config("g1 string form must be \"special\"");
            }
            special = true;
        } else {
            g1 = decay_from_json(j.at("g1"), U);
        }
        return ModelConfig{ExpQuadraticModel(std::move(process), eta, g0, g1, special)};
    }
    if (family == "generic") {
        if (!j.contains("F") || !j.contains("w")) bad_config("generic model needs 'F' and 'w'");
        TerminalFunction F = terminal_from_json(j.at("F"), U);
        WeightFunction w = weight_from_json(j.at("w"), U);
        Dynamics dynamics = Dynamics::BridgeMeasure;
        if (j.contains("dynamics")) {
            const std::string d = j.at("dynamics").get<std::string>();
            if (d == "bridge") {
                dynamics = Dynamics::BridgeMeasure;
            } else if (d == "lrb") {
                dynamics = Dynamics::LevyRandomBridge;
            } else {
                bad_config("dynamics must be \"bridge\" or \"lrb\"");
            }
        }
        return ModelConfig{KernelModel(std::move(process), F, w, std::nullopt, dynamics)};
    }
    bad_config("unknown model family '" + family + "'");
}

Json to_json(const ModelConfig& config) {
    Json j;
    const InformationModel& process = config.process();
    j["sigma"] = process.sigma();
    j["U"] = process.horizon();
    j["prior"] = to_json(process.prior());
    if (const auto* quad = std::get_if<QuadraticModel>(&config.model)) {
        (void)quad;
        j["family"] = "quadratic";
    } else if (const auto* expquad = std::get_if<ExpQuadraticModel>(&config.model)) {
        j["family"] = "expquad";
        j["eta"] = expquad->eta();
        j["g0"] = to_json(expquad->g0());
        if (expquad->special_g1()) {
            j["g1"] = "special";
        } else {
            j["g1"] = to_json(*expquad->g1());
        }
    } else {
        const KernelModel& kernel = std::get<KernelModel>(config.model);
        j["family"] = "generic";
        j["F"] = to_json(kernel.terminal());
        j["w"] = to_json(kernel.weight());
        j["dynamics"] = kernel.dynamics() == Dynamics::BridgeMeasure ? "bridge" : "lrb";
    }
    return j;
}

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value,
                                      std::chars_format::general, 15);
    return std::string(buf, result.ptr);
}

}  // namespace whk
