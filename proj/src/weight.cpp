#include "whk/weight.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace whk {

struct WeightFunction::Node {
    Kind kind;
    double horizon = std::numeric_limits<double>::quiet_NaN();
    double eta = 0.0;
    double scale = 1.0;
    std::shared_ptr<const DecayFunction> decay;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::function<double(double, double)> fn;
    std::string label;
};

double WeightFunction::eval(const Node& n, double t, double u) {
    switch (n.kind) {
        case Kind::Affine: {
            const double v = n.horizon - t - u;
            return v > 0.0 ? v : 0.0;
        }
        case Kind::Power: {
            const double v = n.horizon - t - u;
            return v > 0.0 ? std::pow(v, n.eta - 0.5) : 0.0;
        }
        case Kind::Horizon:
            return n.decay->value(t + u);
        case Kind::Scaled:
            return n.scale * eval(*n.left, t, u);
        case Kind::Sum:
            return eval(*n.left, t, u) + eval(*n.right, t, u);
        case Kind::Product:
            return eval(*n.left, t, u) * eval(*n.right, t, u);
        case Kind::Custom:
            return n.fn(t, u);
    }
    return 0.0;
}

WeightFunction WeightFunction::affine(double U) {
    if (!(U > 0.0)) throw std::invalid_argument("WeightFunction::affine: U must be positive");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Affine;
    node->horizon = U;
    return WeightFunction(node);
}

WeightFunction WeightFunction::power(double U, double eta) {
    if (!(U > 0.0)) throw std::invalid_argument("WeightFunction::power: U must be positive");
    if (!(eta > 0.5)) throw std::invalid_argument("WeightFunction::power: requires eta > 1/2");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Power;
    node->horizon = U;
    node->eta = eta;
    return WeightFunction(node);
}

WeightFunction WeightFunction::horizon(DecayFunction wbar) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Horizon;
    node->decay = std::make_shared<DecayFunction>(wbar);
    if (wbar.kind() == DecayFunction::Kind::PowerDecay) node->horizon = wbar.horizon();
    return WeightFunction(node);
}

WeightFunction WeightFunction::scaled(double c, WeightFunction inner) {
    if (!(c > 0.0)) throw std::invalid_argument("WeightFunction::scaled: c must be positive");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Scaled;
    node->scale = c;
    node->horizon = inner.node_->horizon;
    node->left = inner.node_;
    return WeightFunction(node);
}

WeightFunction WeightFunction::sum(WeightFunction a, WeightFunction b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Sum;
    node->left = a.node_;
    node->right = b.node_;
    node->horizon = std::isnan(a.node_->horizon) ? b.node_->horizon : a.node_->horizon;
    return WeightFunction(node);
}

WeightFunction WeightFunction::product(WeightFunction a, WeightFunction b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->left = a.node_;
    node->right = b.node_;
    node->horizon = std::isnan(a.node_->horizon) ? b.node_->horizon : a.node_->horizon;
    return WeightFunction(node);
}

WeightFunction WeightFunction::custom(std::function<double(double, double)> fn,
                                      std::string label) {
    if (!fn) throw std::invalid_argument("WeightFunction::custom: missing callable");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Custom;
    node->fn = std::move(fn);
    node->label = std::move(label);
    return WeightFunction(node);
}

double WeightFunction::operator()(double t, double u) const { return eval(*node_, t, u); }

WeightFunction::Kind WeightFunction::kind() const { return node_->kind; }
double WeightFunction::horizon_bound() const { return node_->horizon; }
double WeightFunction::eta() const {
    if (node_->kind != Kind::Power) throw std::logic_error("WeightFunction: not a power leaf");
    return node_->eta;
}
double WeightFunction::scale() const { return node_->scale; }
const DecayFunction& WeightFunction::decay() const {
    if (!node_->decay) throw std::logic_error("WeightFunction: no decay function");
    return *node_->decay;
}
WeightFunction WeightFunction::left() const {
    if (!node_->left) throw std::logic_error("WeightFunction: no left child");
    return WeightFunction(node_->left);
}
WeightFunction WeightFunction::right() const {
    if (!node_->right) throw std::logic_error("WeightFunction: no right child");
    return WeightFunction(node_->right);
}
const std::string& WeightFunction::label() const { return node_->label; }

WeightValidityReport check_weight_validity(const WeightFunction& w, double U,
                                           int grid_density) {
    if (grid_density < 2) throw std::invalid_argument("check_weight_validity: grid_density >= 2");
    WeightValidityReport report;
    const int n = grid_density;
    for (int i = 0; i <= n; ++i) {
        const double t = U * i / n;
        for (int j = 0; j <= n; ++j) {
            const double u = U * j / n;
            if (t + u > U) continue;
            const double smax = std::min(t, u);
            for (int k = 0; k <= n; ++k) {
                const double s = smax * k / n;
                const double lhs = w(t, u - s);
                const double rhs = w(t - s, u);
                const double violation = lhs - rhs;
                if (violation > report.max_violation) {
                    report.max_violation = violation;
                    report.witness_s = s;
                    report.witness_t = t;
                    report.witness_u = u;
                }
            }
        }
    }
    report.valid = report.max_violation <= 1e-12;
    return report;
}

}  // namespace whk
