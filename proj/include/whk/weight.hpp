#pragma once

#include <functional>
#include <memory>
#include <string>

#include "whk/decay.hpp"

namespace whk {

/// Composable weight function w(t, u) >= 0 satisfying the defining
/// inequality w(t, u-s) <= w(t-s, u) for 0 <= s <= min(t, u). Leaves:
///   affine           U - t - u
///   power            (U - t - u)^(eta - 1/2),  eta > 1/2
///   horizon          wbar(t + u) for nonincreasing wbar
/// Combinators: scaled (c > 0), sum, product. `custom` wraps an arbitrary
/// callable for harness fault injection and carries no validity guarantee.
class WeightFunction {
public:
    enum class Kind { Affine, Power, Horizon, Scaled, Sum, Product, Custom };

    static WeightFunction affine(double U);
    static WeightFunction power(double U, double eta);
    static WeightFunction horizon(DecayFunction wbar);
    static WeightFunction scaled(double c, WeightFunction inner);
    static WeightFunction sum(WeightFunction a, WeightFunction b);
    static WeightFunction product(WeightFunction a, WeightFunction b);
    static WeightFunction custom(std::function<double(double, double)> fn, std::string label);

    double operator()(double t, double u) const;

    Kind kind() const;
    double horizon_bound() const;  // U for affine/power, NaN when unknown
    double eta() const;            // power leaves only
    double scale() const;          // scaled nodes only
    const DecayFunction& decay() const;
    WeightFunction left() const;
    WeightFunction right() const;
    const std::string& label() const;

private:
    struct Node;
    explicit WeightFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static double eval(const Node& node, double t, double u);
    std::shared_ptr<const Node> node_;
};

struct WeightValidityReport {
    bool valid = true;
    double max_violation = 0.0;
    double witness_s = 0.0;
    double witness_t = 0.0;
    double witness_u = 0.0;
};

/// Grid check of the defining inequality over {0 <= s <= min(t,u), t+u <= U}.
/// Valid iff no violation beyond 1e-12.
WeightValidityReport check_weight_validity(const WeightFunction& w, double U,
                                           int grid_density);

}  // namespace whk
