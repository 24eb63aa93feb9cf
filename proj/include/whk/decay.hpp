#pragma once

#include <stdexcept>
#include <cmath>

namespace whk {

/// Positive nonincreasing differentiable functions of time used for the
/// g0/g1 families and for horizon-style weights: c, c*e^{-rho t}, or
/// c*(U-t)^alpha. Derivatives are analytic.
class DecayFunction {
public:
    enum class Kind { Constant, ExpDecay, PowerDecay };

    static DecayFunction constant(double c) {
        require_positive(c);
        return DecayFunction(Kind::Constant, c, 0.0, 0.0);
    }
    static DecayFunction exp_decay(double scale, double rate) {
        require_positive(scale);
        if (!(rate >= 0.0)) throw std::invalid_argument("DecayFunction: rate must be >= 0");
        return DecayFunction(Kind::ExpDecay, scale, rate, 0.0);
    }
    static DecayFunction power_decay(double scale, double horizon, double alpha) {
        require_positive(scale);
        if (!(horizon > 0.0)) throw std::invalid_argument("DecayFunction: horizon must be positive");
        if (!(alpha >= 0.0)) throw std::invalid_argument("DecayFunction: alpha must be >= 0");
        return DecayFunction(Kind::PowerDecay, scale, alpha, horizon);
    }

    Kind kind() const { return kind_; }
    double scale() const { return scale_; }
    double rate() const { return param_; }
    double alpha() const { return param_; }
    double horizon() const { return horizon_; }

    double value(double t) const {
        switch (kind_) {
            case Kind::Constant: return scale_;
            case Kind::ExpDecay: return scale_ * std::exp(-param_ * t);
            case Kind::PowerDecay: return scale_ * std::pow(horizon_ - t, param_);
        }
        return 0.0;
    }

    double derivative(double t) const {
        switch (kind_) {
            case Kind::Constant: return 0.0;
            case Kind::ExpDecay: return -param_ * scale_ * std::exp(-param_ * t);
            case Kind::PowerDecay:
                return param_ == 0.0 ? 0.0
                                     : -param_ * scale_ * std::pow(horizon_ - t, param_ - 1.0);
        }
        return 0.0;
    }

private:
    DecayFunction(Kind kind, double scale, double param, double horizon)
        : kind_(kind), scale_(scale), param_(param), horizon_(horizon) {}

    static void require_positive(double c) {
        if (!(c > 0.0)) throw std::invalid_argument("DecayFunction: scale must be positive");
    }

    Kind kind_;
    double scale_;
    double param_;    // rate for ExpDecay, alpha for PowerDecay
    double horizon_;  // PowerDecay only
};

}  // namespace whk
