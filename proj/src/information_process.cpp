#include "whk/information_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace whk {

InformationModel::InformationModel(double sigma, double horizon, PriorLaw prior)
    : sigma_(sigma), horizon_(horizon), prior_(std::move(prior)) {
    if (!(sigma > 0.0)) throw std::invalid_argument("InformationModel: sigma must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("InformationModel: horizon must be positive");
}

void InformationModel::require_time(double t) const {
    if (!(t >= 0.0) || t > max_time()) {
        throw std::domain_error("InformationModel: time outside [0, U - eps_horizon]");
    }
}

BridgeLaw bridge_conditional_law(const InformationModel& model, double s, double t, double x) {
    if (!(s >= 0.0) || !(t >= s)) {
        throw std::domain_error("bridge_conditional_law: requires 0 <= s <= t");
    }
    model.require_time(t);
    const double U = model.horizon();
    BridgeLaw law;
    law.mean = x * (U - t) / (U - s);
    law.variance = (t - s) * (U - t) / (U - s);
    return law;
}

namespace {

// Exponent of the posterior weight at prior point x.
inline double posterior_exponent(double sigma, double U, double t, double ell, double x) {
    return (U / (U - t)) * (sigma * x * ell - 0.5 * sigma * sigma * x * x * t);
}

struct PosteriorSums {
    double log_norm = 0.0;  // log of integral of exp(exponent) d nu
    double mean = 0.0;      // posterior mean of x
};

// Stabilised sums over a discrete set of (value, weight) pairs.
PosteriorSums weighted_sums(const std::vector<double>& values,
                            const std::vector<double>& weights,
                            const std::vector<double>& exponents) {
    double emax = exponents[0];
    for (double e : exponents) emax = std::max(emax, e);
    double z = 0.0, zx = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double w = weights[i] * std::exp(exponents[i] - emax);
        z += w;
        zx += w * values[i];
    }
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw std::runtime_error("posterior: non-normalisable posterior weight");
    }
    return {emax + std::log(z), zx / z};
}

PosteriorSums posterior_sums(const InformationModel& model, double t, double ell,
                             const QuadratureOptions& opts) {
    const double sigma = model.sigma();
    const double U = model.horizon();
    const PriorLaw& prior = model.prior();

    switch (prior.kind()) {
        case PriorLaw::Kind::Atoms: {
            std::vector<double> values, weights, exponents;
            for (const Atom& a : prior.atom_list()) {
                values.push_back(a.value);
                weights.push_back(a.weight);
                exponents.push_back(posterior_exponent(sigma, U, t, ell, a.value));
            }
            return weighted_sums(values, weights, exponents);
        }
        case PriorLaw::Kind::Gaussian: {
            // Gaussian prior conjugates: the posterior is Gaussian with
            // precision 1/v + b and mean (m/v + a)/(1/v + b) where
            // a = sigma ell U/(U-t), b = sigma^2 t U/(U-t).
            const double m = prior.gaussian_mean();
            const double v = prior.gaussian_variance();
            const double a = sigma * ell * U / (U - t);
            const double b = sigma * sigma * t * U / (U - t);
            const double precision = 1.0 / v + b;
            const double q = m / v + a;
            PosteriorSums out;
            out.mean = q / precision;
            out.log_norm = -0.5 * std::log1p(v * b) + 0.5 * q * q / precision -
                           0.5 * m * m / v;
            return out;
        }
        case PriorLaw::Kind::Uniform: {
            const double lo = prior.uniform_lo();
            const double hi = prior.uniform_hi();
            auto evaluate = [&](int n) {
                const QuadratureRule& rule = gauss_legendre_rule(n);
                std::vector<double> values(n), weights(n), exponents(n);
                const double mid = 0.5 * (lo + hi);
                const double half = 0.5 * (hi - lo);
                for (int i = 0; i < n; ++i) {
                    values[i] = mid + half * rule.nodes[i];
                    weights[i] = rule.weights[i] * half / (hi - lo);
                    exponents[i] = posterior_exponent(sigma, U, t, ell, values[i]);
                }
                return weighted_sums(values, weights, exponents);
            };
            PosteriorSums prev = evaluate(std::max(16, opts.gh_nodes / 2));
            for (int n = opts.gh_nodes; n <= opts.gh_max_nodes; n *= 2) {
                const PosteriorSums cur = evaluate(n);
                const bool mean_ok =
                    std::abs(cur.mean - prev.mean) <=
                    std::max(opts.abs_tol, opts.gh_rel_tol * std::abs(cur.mean));
                const bool norm_ok =
                    std::abs(cur.log_norm - prev.log_norm) <=
                    std::max(opts.abs_tol, opts.gh_rel_tol * std::max(1.0, std::abs(cur.log_norm)));
                if (mean_ok && norm_ok) return cur;
                prev = cur;
            }
            return prev;
        }
    }
    throw std::logic_error("posterior_sums: unknown prior kind");
}

}  // namespace

double posterior_mean(const InformationModel& model, double t, double ell,
                      const QuadratureOptions& opts) {
    model.require_time(t);
    if (t == 0.0) return model.prior().mean();
    return posterior_sums(model, t, ell, opts).mean;
}

double log_posterior_normaliser(const InformationModel& model, double t, double ell,
                                const QuadratureOptions& opts) {
    model.require_time(t);
    if (t == 0.0) return 0.0;
    return posterior_sums(model, t, ell, opts).log_norm;
}

double measure_change_martingale(const InformationModel& model, double t, double ell,
                                 const QuadratureOptions& opts) {
    return std::exp(-log_posterior_normaliser(model, t, ell, opts));
}

}  // namespace whk
