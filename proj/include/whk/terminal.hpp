#pragma once

#include <cmath>
#include <stdexcept>

namespace whk {

/// Terminal payoff shape F driving the propagator. Variants:
///   quadratic         F(x) = x^2
///   exp_quadratic     F(tau, x) = exp(x^2 / (2 (U - tau)))   (gamma_tau = 1/(U - tau))
///   exp_linear        F(x) = exp(-mu x)
/// Exponents are capped at 700; beyond that a std::range_error is thrown
/// rather than silently producing infinities.
class TerminalFunction {
public:
    enum class Kind { Quadratic, ExpQuadratic, ExpLinear };

    static TerminalFunction quadratic() { return TerminalFunction(Kind::Quadratic, 0.0, 0.0); }
    static TerminalFunction exp_quadratic(double U) {
        if (!(U > 0.0)) throw std::invalid_argument("TerminalFunction: U must be positive");
        return TerminalFunction(Kind::ExpQuadratic, U, 0.0);
    }
    static TerminalFunction exp_linear(double mu) {
        return TerminalFunction(Kind::ExpLinear, 0.0, mu);
    }

    Kind kind() const { return kind_; }
    double horizon() const { return U_; }
    double mu() const { return mu_; }

    /// F evaluated at time tau = t + u and state x.
    double operator()(double tau, double x) const {
        switch (kind_) {
            case Kind::Quadratic:
                return x * x;
            case Kind::ExpQuadratic: {
                if (!(tau < U_)) {
                    throw std::domain_error("TerminalFunction: tau must be below the horizon");
                }
                return checked_exp(0.5 * x * x / (U_ - tau));
            }
            case Kind::ExpLinear:
                return checked_exp(-mu_ * x);
        }
        return 0.0;
    }

    static double checked_exp(double exponent) {
        if (exponent > 700.0) {
            throw std::range_error("TerminalFunction: exponent above overflow cap 700");
        }
        return std::exp(exponent);
    }

private:
    TerminalFunction(Kind kind, double U, double mu) : kind_(kind), U_(U), mu_(mu) {}

    Kind kind_;
    double U_;
    double mu_;
};

}  // namespace whk
