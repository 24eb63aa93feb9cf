#include "whk/lrb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "whk/normal.hpp"

namespace whk {

LrbDensitySpec::LrbDensitySpec(LogDensity log_rho, QuadratureOptions psi_quadrature)
    : log_rho_(std::move(log_rho)), psi_cfg_(psi_quadrature) {
    if (!log_rho_) throw std::invalid_argument("LrbDensitySpec: missing density");
}

LrbDensitySpec LrbDensitySpec::brownian() {
    return LrbDensitySpec([](double t, double x) { return log_gaussian_pdf(x, 0.0, t); });
}

double LrbDensitySpec::rho(double t, double x) const {
    return std::exp(log_rho_(t, x));
}

namespace {

// log of sum w_i exp(e_i) with max-exponent stabilisation.
double log_sum_exp(const std::vector<double>& weights, const std::vector<double>& exponents) {
    double emax = exponents[0];
    for (double e : exponents) emax = std::max(emax, e);
    if (!std::isfinite(emax)) return emax;  // all terms vanished (or diverged)
    double z = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        z += weights[i] * std::exp(exponents[i] - emax);
    }
    return emax + std::log(z);
}

}  // namespace

double log_lrb_psi(const LrbDensitySpec& spec, const PriorLaw& nu, double U,
                   double t, double y) {
    if (!(t >= 0.0) || !(t < U)) throw std::domain_error("log_lrb_psi: t outside [0, U)");
    if (t == 0.0) return 0.0;  // psi_0U(R; 0) = nu(R) = 1

    auto term = [&](double z) { return spec.log_rho(U - t, z - y) - spec.log_rho(U, z); };

    switch (nu.kind()) {
        case PriorLaw::Kind::Atoms: {
            std::vector<double> weights, exponents;
            for (const Atom& a : nu.atom_list()) {
                weights.push_back(a.weight);
                exponents.push_back(term(a.value));
            }
            return log_sum_exp(weights, exponents);
        }
        case PriorLaw::Kind::Uniform:
        case PriorLaw::Kind::Gaussian: {
            // Gauss-Legendre on the support for bounded priors,
            // Gauss-Hermite against the prior itself for Gaussian ones
            const QuadratureOptions& cfg = spec.psi_quadrature();
            const bool is_uniform = nu.kind() == PriorLaw::Kind::Uniform;
            auto evaluate = [&](int n) {
                std::vector<double> weights(n), exponents(n);
                if (is_uniform) {
                    const QuadratureRule& rule = gauss_legendre_rule(n);
                    const double lo = nu.uniform_lo();
                    const double hi = nu.uniform_hi();
                    const double mid = 0.5 * (lo + hi);
                    const double half = 0.5 * (hi - lo);
                    for (int i = 0; i < n; ++i) {
                        const double z = mid + half * rule.nodes[i];
                        weights[i] = rule.weights[i] * half / (hi - lo);
                        exponents[i] = term(z);
                    }
                } else {
                    constexpr double kInvSqrtPi = 0.5641895835477562869481;
                    const QuadratureRule& rule = gauss_hermite_rule(n);
                    const double scale = std::sqrt(2.0 * nu.gaussian_variance());
                    for (int i = 0; i < n; ++i) {
                        const double z = nu.gaussian_mean() + scale * rule.nodes[i];
                        weights[i] = rule.weights[i] * kInvSqrtPi;
                        exponents[i] = term(z);
                    }
                }
                return log_sum_exp(weights, exponents);
            };
            double prev = evaluate(std::max(32, cfg.gh_nodes));
            double last_diff = std::abs(prev);
            for (int n = std::max(64, cfg.gh_nodes * 2);
                 n <= std::max(256, cfg.gh_max_nodes); n *= 2) {
                const double cur = evaluate(n);
                last_diff = std::abs(cur - prev);
                if (last_diff <=
                    std::max(cfg.abs_tol, cfg.gh_rel_tol * std::max(1.0, std::abs(cur)))) {
                    return cur;
                }
                prev = cur;
            }
            throw QuadratureError("log_lrb_psi: quadrature did not converge", prev, last_diff);
        }
    }
    throw std::logic_error("log_lrb_psi: unknown prior kind");
}

double lrb_transition_density(const LrbDensitySpec& spec, const PriorLaw& nu,
                              double U, double s, double t, double x, double y) {
    if (!(s >= 0.0) || !(s < t) || !(t < U)) {
        throw std::domain_error("lrb_transition_density: requires 0 <= s < t < U");
    }
    const double log_density = log_lrb_psi(spec, nu, U, t, y) -
                               log_lrb_psi(spec, nu, U, s, x) +
                               spec.log_rho(t - s, y - x);
    return std::exp(log_density);
}

PriorLaw lrb_terminal_law(const InformationModel& model) {
    return model.prior().scaled(model.sigma() * model.horizon());
}

}  // namespace whk
