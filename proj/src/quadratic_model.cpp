#include "whk/quadratic_model.hpp"

#include <cmath>
#include <stdexcept>

namespace whk {

KernelModel as_kernel_model(const QuadraticModel& model) {
    const double U = model.process.horizon();
    return KernelModel(model.process, TerminalFunction::quadratic(),
                       WeightFunction::affine(U), ClosedFormTag::Quadratic);
}

double quad_f(const QuadraticModel& model, double t, double x) {
    model.process.require_time(t);
    const double W = model.process.horizon() - t;
    return W * W * W / 12.0 + 0.25 * W * W * x * x;
}

double quad_conditional_second_moment(const QuadraticModel& model, double u, double t,
                                      double x) {
    if (!(u >= 0.0) || !(t >= 0.0)) {
        throw std::domain_error("quad_conditional_second_moment: negative time");
    }
    model.process.require_time(t + u);
    const double W = model.process.horizon() - t;
    const double ratio = (W - u) / W;
    return u * ratio + ratio * ratio * x * x;
}

double quad_bond_price(const QuadraticModel& model, double t, double T, double x) {
    if (!(T >= t)) throw std::domain_error("quad_bond_price: requires T >= t");
    model.process.require_time(T);
    if (T == t) return 1.0;
    const double U = model.process.horizon();
    const double WT = U - T;
    const double Wt = U - t;
    const double numerator = WT * WT * WT / 12.0 +
                             0.25 * (T - t) * WT * WT * WT / Wt +
                             0.25 * (WT * WT * WT * WT) / (Wt * Wt) * x * x;
    return numerator / quad_f(model, t, x);
}

double quad_short_rate(const QuadraticModel& model, double t, double x) {
    model.process.require_time(t);
    const double W = model.process.horizon() - t;
    return x * x / (0.25 * W * (W / 3.0 + x * x));
}

double quad_market_price_of_risk(const QuadraticModel& model, double t, double x,
                                 const QuadratureOptions& opts) {
    model.process.require_time(t);
    const double U = model.process.horizon();
    const double W = U - t;
    const double expected_factor = posterior_mean(model.process, t, x, opts);
    return model.process.sigma() * U / W * expected_factor -
           0.5 * W * W * x / quad_f(model, t, x);
}

}  // namespace whk
