#pragma once

#include <stdexcept>
#include <string>

namespace whk {

/// Thrown when an adaptive or escalating quadrature fails to meet its
/// tolerance budget. Carries the best estimate achieved and the bound on
/// its error so callers can decide whether the partial result is usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace whk
