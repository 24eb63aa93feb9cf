#include "whk/expquad_model.hpp"

#include <cmath>
#include <stdexcept>

#include "whk/terminal.hpp"

namespace whk {

ExpQuadraticModel::ExpQuadraticModel(InformationModel process, double eta, DecayFunction g0,
                                     std::optional<DecayFunction> g1, bool special_g1)
    : process_(std::move(process)),
      eta_(eta),
      g0_(g0),
      g1_(g1),
      special_g1_(special_g1) {
    if (!(eta > 0.5)) throw std::invalid_argument("ExpQuadraticModel: requires eta > 1/2");
    if (!special_g1_ && !g1_) {
        throw std::invalid_argument("ExpQuadraticModel: g1 required unless special_g1 is set");
    }
    // nonincreasing check on a grid (analytic families satisfy it by
    // construction; this guards externally supplied parameters)
    const double tmax = process_.max_time();
    for (int i = 0; i < 64; ++i) {
        const double t = tmax * i / 64.0;
        if (g0_.derivative(t) > 1e-12 || (g1_ && g1_->derivative(t) > 1e-12)) {
            throw std::invalid_argument("ExpQuadraticModel: g0/g1 must be nonincreasing");
        }
    }
}

double ExpQuadraticModel::g1_value(double t) const {
    if (special_g1_) {
        return std::pow(process_.horizon() - t, -(eta_ - 0.5));
    }
    return g1_->value(t);
}

double ExpQuadraticModel::g1_derivative(double t) const {
    if (special_g1_) {
        return (eta_ - 0.5) * std::pow(process_.horizon() - t, -(eta_ + 0.5));
    }
    return g1_->derivative(t);
}

KernelModel as_kernel_model(const ExpQuadraticModel& model) {
    const double U = model.process().horizon();
    return KernelModel(model.process(), TerminalFunction::exp_quadratic(U),
                       WeightFunction::power(U, model.eta()), ClosedFormTag::ExpQuadratic);
}

double horizon_gaussian_martingale(double U, double t, double x) {
    const double W = U - t;
    return std::sqrt(W) * TerminalFunction::checked_exp(0.5 * x * x / W);
}

double expquad_heat_kernel_value(double U, double eta, double t, double x) {
    const double W = U - t;
    return std::pow(W, eta + 0.5) / eta * TerminalFunction::checked_exp(0.5 * x * x / W);
}

double expquad_f_tilde(const ExpQuadraticModel& model, double t, double x) {
    model.process().require_time(t);
    const double W = model.process().horizon() - t;
    const double core = std::pow(W, model.eta()) *
                        TerminalFunction::checked_exp(0.5 * x * x / W);
    return model.g0_value(t) + model.g1_value(t) * core;
}

double expquad_bond_price(const ExpQuadraticModel& model, double t, double T, double x) {
    if (!(T >= t)) throw std::domain_error("expquad_bond_price: requires T >= t");
    model.process().require_time(T);
    const double U = model.process().horizon();
    const double Wt = U - t;
    const double WT = U - T;
    const double numerator =
        model.g0_value(T) + model.g1_value(T) * std::pow(WT, model.eta() - 0.5) *
                                std::sqrt(Wt) *
                                TerminalFunction::checked_exp(0.5 * x * x / Wt);
    return numerator / expquad_f_tilde(model, t, x);
}

double expquad_short_rate(const ExpQuadraticModel& model, double t, double x) {
    model.process().require_time(t);
    const double U = model.process().horizon();
    const double W = U - t;
    const double expo = TerminalFunction::checked_exp(0.5 * x * x / W);

    if (model.special_g1()) {
        return -model.g0_derivative(t) / (model.g0_value(t) + std::sqrt(W) * expo);
    }

    const double core = model.g1_value(t) * std::pow(W, model.eta()) * expo;
    const double f = model.g0_value(t) + core;
    const double bracket = (model.eta() - 0.5) / W -
                           model.g1_derivative(t) / model.g1_value(t) -
                           model.g0_derivative(t) / core;
    return core / f * bracket;
}

}  // namespace whk
