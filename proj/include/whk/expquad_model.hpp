#pragma once

#include <optional>

#include "whk/decay.hpp"
#include "whk/information_process.hpp"
#include "whk/kernel_model.hpp"

namespace whk {

/// The exponential-quadratic family: the pricing kernel building block is
///   f~(t, x) = g0(t) + g1(t) (U-t)^eta exp(x^2 / (2(U-t))),
/// with g0, g1 positive and nonincreasing. When `special_g1` is set,
/// g1(t) = (U-t)^{-(eta-1/2)} and the short rate collapses to
/// -g0'(t) / (g0(t) + (U-t)^{1/2} exp(x^2/(2(U-t)))), which is positive
/// whenever g0 is strictly decreasing.
class ExpQuadraticModel {
public:
    ExpQuadraticModel(InformationModel process, double eta, DecayFunction g0,
                      std::optional<DecayFunction> g1, bool special_g1 = false);

    const InformationModel& process() const { return process_; }
    double eta() const { return eta_; }
    const DecayFunction& g0() const { return g0_; }
    const std::optional<DecayFunction>& g1() const { return g1_; }
    bool special_g1() const { return special_g1_; }

    double g0_value(double t) const { return g0_.value(t); }
    double g0_derivative(double t) const { return g0_.derivative(t); }
    double g1_value(double t) const;
    double g1_derivative(double t) const;

private:
    InformationModel process_;
    double eta_;
    DecayFunction g0_;
    std::optional<DecayFunction> g1_;
    bool special_g1_;
};

/// The unmodified (F, w) pair as a generic kernel model (weight
/// (U-t-u)^{eta-1/2}, terminal exp-quadratic with gamma = 1/(U-tau)).
KernelModel as_kernel_model(const ExpQuadraticModel& model);

/// h(t, x) = (U-t)^{1/2} exp(x^2 / (2(U-t))): a bridge-measure martingale,
/// the algebraic core of the family.
double horizon_gaussian_martingale(double U, double t, double x);

/// Closed form of the weighted heat kernel of the unmodified pair:
/// eta^{-1} (U-t)^{eta + 1/2} exp(x^2 / (2(U-t))). Fixed by the quadrature
/// oracle; see the errata report for the printed variant it corrects.
double expquad_heat_kernel_value(double U, double eta, double t, double x);

/// f~(t, x); throws std::range_error past the exponent overflow cap.
double expquad_f_tilde(const ExpQuadraticModel& model, double t, double x);

/// Closed-form bond price
/// [g0(T) + g1(T)(U-T)^{eta-1/2}(U-t)^{1/2} exp(x^2/(2(U-t)))] / f~(t, x).
double expquad_bond_price(const ExpQuadraticModel& model, double t, double T, double x);

/// Short rate; dispatches to the special closed form when special_g1 is set.
double expquad_short_rate(const ExpQuadraticModel& model, double t, double x);

}  // namespace whk
