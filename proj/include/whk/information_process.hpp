#pragma once

#include "whk/prior.hpp"
#include "whk/quadrature.hpp"

namespace whk {

/// Conditional Gaussian law of the information value at a later time under
/// the bridge measure.
struct BridgeLaw {
    double mean = 0.0;
    double variance = 0.0;
};

/// A Brownian bridge information process: the observable signal is
/// sigma * t * X + beta(t) on [0, U], where X has law `prior` and beta is
/// an independent standard Brownian bridge pinned at 0 and U.
class InformationModel {
public:
    InformationModel(double sigma, double horizon, PriorLaw prior);

    double sigma() const { return sigma_; }
    double horizon() const { return horizon_; }
    const PriorLaw& prior() const { return prior_; }

    /// Largest admissible evaluation time: the U/(U-t) factors blow up at
    /// the horizon, so times beyond U*(1 - 1e-9) are rejected.
    double max_time() const { return horizon_ * (1.0 - 1e-9); }

    /// Validates 0 <= t <= max_time(); throws std::domain_error otherwise.
    void require_time(double t) const;

private:
    double sigma_;
    double horizon_;
    PriorLaw prior_;
};

/// Conditional law under the bridge measure of L_t given L_s = x, for
/// 0 <= s <= t < U: mean x*(U-t)/(U-s), variance (t-s)*(U-t)/(U-s).
BridgeLaw bridge_conditional_law(const InformationModel& model, double s, double t, double x);

/// Same law without the near-horizon guard. Quadrature internals probe
/// t arbitrarily close to U (open-endpoint integrals); only user-facing
/// time inputs go through the guard.
inline BridgeLaw bridge_law_unchecked(double U, double s, double t, double x) {
    return {x * (U - t) / (U - s), (t - s) * (U - t) / (U - s)};
}

/// E[X | L_t = ell] under the real measure, from the Bayes posterior
/// nu_t(dx) proportional to nu(dx) * exp[(U/(U-t)) (sigma x ell - sigma^2 x^2 t / 2)].
double posterior_mean(const InformationModel& model, double t, double ell,
                      const QuadratureOptions& opts = {});

/// log of Phi_t(ell) = integral of the posterior weight against the prior.
/// The measure-change martingale is 1/Phi_t.
double log_posterior_normaliser(const InformationModel& model, double t, double ell,
                                const QuadratureOptions& opts = {});

/// M_t = 1/Phi_t evaluated at L_t = ell; M_0 = 1. Changes measure from the
/// real measure to the bridge measure.
double measure_change_martingale(const InformationModel& model, double t, double ell,
                                 const QuadratureOptions& opts = {});

}  // namespace whk
