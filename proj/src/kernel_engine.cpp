#include "whk/kernel_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "whk/normal.hpp"

namespace whk {

namespace {

// Integration bracket for densities of L_{t'} given L_t = x: the terminal
// hull pulled back to t' plus a wide Gaussian margin.
std::pair<double, double> lrb_state_bracket(const KernelModel& model, double t,
                                            double t_next, double x) {
    const double U = model.process().horizon();
    const auto [zlo, zhi] = model.lrb_terminal().support_hull();
    const double frac = (t_next - t) / (U - t);
    double lo = x + (zlo - x) * frac;
    double hi = x + (zhi - x) * frac;
    if (lo > hi) std::swap(lo, hi);
    const double margin = 12.0 * std::sqrt(t_next - t) + 1e-6;
    return {lo - margin, hi + margin};
}

double propagator_bridge(const KernelModel& model, double u, double t, double x,
                         const QuadratureOptions& opts) {
    const double U = model.process().horizon();
    const BridgeLaw law = bridge_law_unchecked(U, t, t + u, x);
    const TerminalFunction& F = model.terminal();
    const double tau = t + u;
    if (F.kind() == TerminalFunction::Kind::ExpQuadratic) {
        // E[exp(Y^2/(2 W))] for Y ~ N(m, v) equals
        // (1 - v/W)^{-1/2} exp(m^2 / (2 (W - v))). Hermite quadrature cannot
        // represent this integrand as v -> W (the node count needed grows
        // like (1 - v/W)^{-2}), and the heat-kernel time integral drives v/W
        // to 1 at its upper endpoint, so this terminal uses the identity.
        const double W = U - tau;
        const double gamma_var = law.variance / W;
        assert(gamma_var < 1.0);
        if (!(gamma_var < 1.0)) {
            throw std::domain_error("eval_propagator: divergent exp-quadratic integrand");
        }
        const double residual = W - law.variance;
        return TerminalFunction::checked_exp(0.5 * law.mean * law.mean / residual) /
               std::sqrt(1.0 - gamma_var);
    }
    return gauss_hermite_expectation([&](double y) { return F(tau, y); },
                                     law.mean, law.variance, opts);
}

double propagator_lrb(const KernelModel& model, double u, double t, double x,
                      const QuadratureOptions& opts) {
    const double U = model.process().horizon();
    const double tau = t + u;
    const auto [lo, hi] = lrb_state_bracket(model, t, tau, x);
    const TerminalFunction& F = model.terminal();
    auto integrand = [&](double y) {
        return F(tau, y) * lrb_transition_density(model.lrb_density(),
                                                  model.lrb_terminal(), U, t, tau, x, y);
    };
    return integrate_adaptive(integrand, lo, hi, opts).value;
}

}  // namespace

double eval_propagator(const KernelModel& model, double u, double t, double x,
                       const QuadratureOptions& opts) {
    if (!(u > 0.0) || !(t >= 0.0)) {
        throw std::domain_error("eval_propagator: requires u > 0 and t >= 0");
    }
    model.process().require_time(t);
    if (!(t + u < model.process().horizon())) {
        throw std::domain_error("eval_propagator: requires t + u < U");
    }
    if (model.dynamics() == Dynamics::BridgeMeasure) {
        return propagator_bridge(model, u, t, x, opts);
    }
    return propagator_lrb(model, u, t, x, opts);
}

double eval_weighted_heat_kernel(const KernelModel& model, double t, double x,
                                 const QuadratureOptions& opts) {
    model.process().require_time(t);
    const double U = model.process().horizon();
    const double W = U - t;
    const WeightFunction& w = model.weight();
    auto integrand = [&](double u) {
        // deep refinement can round t + u onto the horizon; that sliver is
        // below floating-point resolution and carries no mass
        if (!(t + u < U)) return 0.0;
        return eval_propagator(model, u, t, x, opts) * w(t, u);
    };
    return integrate_time_kernel(integrand, W, opts).value;
}

double bond_numerator_generic(const KernelModel& model, double t, double T, double x,
                              const QuadratureOptions& opts) {
    if (!(t >= 0.0) || !(T >= t)) {
        throw std::domain_error("bond_numerator_generic: requires 0 <= t <= T");
    }
    model.process().require_time(T);
    // Shift v = u - (T - t); the weight argument becomes w(T, v) on (0, U-T).
    const double U = model.process().horizon();
    const double W = U - T;
    const double shift = T - t;
    const WeightFunction& w = model.weight();
    auto integrand = [&](double v) {
        if (!(t + (v + shift) < U)) return 0.0;
        return eval_propagator(model, v + shift, t, x, opts) * w(T, v);
    };
    return integrate_time_kernel(integrand, W, opts).value;
}

double price_bond_generic(const KernelModel& model, double t, double T, double x,
                          const QuadratureOptions& opts) {
    if (T == t) {
        model.process().require_time(t);
        return 1.0;
    }
    const double numerator = bond_numerator_generic(model, t, T, x, opts);
    const double denominator = eval_weighted_heat_kernel(model, t, x, opts);
    return numerator / denominator;
}

double price_asset_generic(const KernelModel& model, double t, double T, double x,
                           const std::function<double(double)>& payoff,
                           const QuadratureOptions& opts) {
    if (!(t >= 0.0) || !(T >= t)) {
        throw std::domain_error("price_asset_generic: requires 0 <= t <= T");
    }
    model.process().require_time(T);
    if (T == t) return payoff(x);

    if (model.dynamics() == Dynamics::BridgeMeasure) {
        const BridgeLaw law = bridge_conditional_law(model.process(), t, T, x);
        const double sd = std::sqrt(law.variance);
        const double lo = law.mean - 12.0 * sd;
        const double hi = law.mean + 12.0 * sd;
        auto integrand = [&](double y) {
            const double p = payoff(y);
            if (p == 0.0) return 0.0;
            return p * eval_weighted_heat_kernel(model, T, y, opts) *
                   gaussian_pdf(y, law.mean, law.variance);
        };
        const double numerator = integrate_adaptive(integrand, lo, hi, opts).value;
        return numerator / eval_weighted_heat_kernel(model, t, x, opts);
    }

    const double U = model.process().horizon();
    const auto [lo, hi] = lrb_state_bracket(model, t, T, x);
    auto integrand = [&](double y) {
        const double p = payoff(y);
        if (p == 0.0) return 0.0;
        return p * eval_weighted_heat_kernel(model, T, y, opts) *
               lrb_transition_density(model.lrb_density(), model.lrb_terminal(), U, t, T, x, y);
    };
    const double numerator = integrate_adaptive(integrand, lo, hi, opts).value;
    return numerator / eval_weighted_heat_kernel(model, t, x, opts);
}

}  // namespace whk
