#pragma once

#include "whk/information_process.hpp"
#include "whk/kernel_model.hpp"

namespace whk {

/// The F(x) = x^2, w(t,u) = U - t - u family: everything is closed form.
struct QuadraticModel {
    InformationModel process;
};

/// The same model expressed through the generic engine (for equivalence
/// checks and the generic option pricer).
KernelModel as_kernel_model(const QuadraticModel& model);

/// f(t, x) = (1/12)(U-t)^3 + (1/4)(U-t)^2 x^2.
double quad_f(const QuadraticModel& model, double t, double x);

/// E[(L_{t+u})^2 | L_t = x] under the bridge measure:
/// u(U-t-u)/(U-t) + ((U-t-u)/(U-t))^2 x^2. The ratio multiplying x^2 is
/// squared; this is the Gaussian bridge identity (see the errata check in
/// the verification suite).
double quad_conditional_second_moment(const QuadraticModel& model, double u, double t,
                                      double x);

/// Closed-form discount bond price.
double quad_bond_price(const QuadraticModel& model, double t, double T, double x);

/// Short rate r(t, x) = x^2 / [(1/4)(U-t)((1/3)(U-t) + x^2)]; nonnegative,
/// zero exactly at x = 0.
double quad_short_rate(const QuadraticModel& model, double t, double x);

/// Market price of risk: (sigma U/(U-t)) E[X | L_t = x] - (1/2)(U-t)^2 x / f(t, x).
double quad_market_price_of_risk(const QuadraticModel& model, double t, double x,
                                 const QuadratureOptions& opts = {});

}  // namespace whk
