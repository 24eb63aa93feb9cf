#pragma once

#include <functional>

#include "whk/kernel_model.hpp"
#include "whk/quadrature.hpp"

namespace whk {

/// Propagator p(u, t, x) = E[F(u + t, L_{u+t}) | L_t = x] for duration
/// u > 0, t + u < U. Gauss-Hermite against the bridge conditional law for
/// bridge-measure models; quadrature against the LRB transition density
/// otherwise.
double eval_propagator(const KernelModel& model, double u, double t, double x,
                       const QuadratureOptions& opts = {});

/// Weighted heat kernel f(t, x) = integral over u in (0, U-t) of
/// p(u, t, x) w(t, u) du, by adaptive quadrature with an endpoint
/// substitution. Always evaluates the integral (closed-form dispatch is
/// left to callers so the two routes stay independently checkable).
double eval_weighted_heat_kernel(const KernelModel& model, double t, double x,
                                 const QuadratureOptions& opts = {});

/// Numerator of the discount-bond ratio: integral over u in (T-t, U-t) of
/// p(u, t, x) w(T, u - (T - t)) du.
double bond_numerator_generic(const KernelModel& model, double t, double T, double x,
                              const QuadratureOptions& opts = {});

/// Discount bond P_tT = numerator / f(t, x); equals 1 at T = t.
double price_bond_generic(const KernelModel& model, double t, double T, double x,
                          const QuadratureOptions& opts = {});

/// Price at t of a single cash flow payoff(L_T) at T. For bridge-measure
/// models the measure-change factors cancel and the price is
/// E_B[f(T, L_T) payoff(L_T) | L_t = x] / f(t, x); LRB models integrate
/// the pricing kernel against the real-measure transition density.
double price_asset_generic(const KernelModel& model, double t, double T, double x,
                           const std::function<double(double)>& payoff,
                           const QuadratureOptions& opts = {});

}  // namespace whk
