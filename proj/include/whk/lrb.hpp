#pragma once

#include <functional>

#include "whk/information_process.hpp"
#include "whk/prior.hpp"
#include "whk/quadrature.hpp"

namespace whk {

/// Density family of the underlying Levy process, in log space for
/// stability of the psi ratios. Only the Brownian family ships; the psi
/// machinery itself is generic in the density.
class LrbDensitySpec {
public:
    using LogDensity = std::function<double(double t, double x)>;

    LrbDensitySpec(LogDensity log_rho, QuadratureOptions psi_quadrature = {});

    /// Standard Brownian motion: rho_t = N(0, t).
    static LrbDensitySpec brownian();

    double log_rho(double t, double x) const { return log_rho_(t, x); }
    double rho(double t, double x) const;
    const QuadratureOptions& psi_quadrature() const { return psi_cfg_; }

private:
    LogDensity log_rho_;
    QuadratureOptions psi_cfg_;
};

/// log of psi_tU(R; y) = integral over z of rho_{U-t}(z - y)/rho_U(z) nu(dz).
/// Exact sum for atomic priors; Gauss-Legendre/Hermite for continuous ones.
double log_lrb_psi(const LrbDensitySpec& spec, const PriorLaw& nu, double U,
                   double t, double y);

/// Transition density of the Levy random bridge:
///   [psi_tU(R; y) / psi_sU(R; x)] * rho_{t-s}(y - x),  0 <= s < t < U.
double lrb_transition_density(const LrbDensitySpec& spec, const PriorLaw& nu,
                              double U, double s, double t, double x, double y);

/// Terminal marginal of the information process seen as a Levy random
/// bridge of standard Brownian motion: the law of sigma * U * X.
PriorLaw lrb_terminal_law(const InformationModel& model);

}  // namespace whk
