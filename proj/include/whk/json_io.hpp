#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

#include "whk/expquad_model.hpp"
#include "whk/kernel_model.hpp"
#include "whk/prior.hpp"
#include "whk/quadratic_model.hpp"
#include "whk/verification.hpp"

namespace whk {

using Json = nlohmann::json;

Json to_json(const PriorLaw& prior);
PriorLaw prior_from_json(const Json& j);

Json to_json(const DecayFunction& decay);
DecayFunction decay_from_json(const Json& j, double U);

Json to_json(const WeightFunction& w);
WeightFunction weight_from_json(const Json& j, double U);

Json to_json(const TerminalFunction& f);
TerminalFunction terminal_from_json(const Json& j, double U);

Json to_json(const CheckReport& report);
Json to_json(const std::vector<CheckReport>& reports);

/// A parsed model configuration: one of the closed-form families or a
/// generic (F, w) kernel model.
struct ModelConfig {
    std::variant<QuadraticModel, ExpQuadraticModel, KernelModel> model;

    const InformationModel& process() const;
    /// The generic-engine view (identity for generic models).
    KernelModel kernel() const;
};

/// Schema: {family: "quadratic"|"expquad"|"generic", sigma, U, prior,
///          eta?, g0?, g1?|"special", F?, w?, dynamics?}.
ModelConfig model_from_json(const Json& j);
Json to_json(const ModelConfig& config);

/// Locale-independent shortest-exact formatting at 15 significant digits.
std::string format_double(double value);

}  // namespace whk
