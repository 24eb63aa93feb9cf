#pragma once

#include <functional>
#include <vector>

#include "whk/errors.hpp"

namespace whk {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_intervals = 4000;
    int gh_nodes = 64;        // default Gauss-Hermite order
    int gh_max_nodes = 256;   // escalation ceiling
    double gh_rel_tol = 1e-9;  // consecutive-order agreement (the returned
                               // finer level is typically far more accurate)
};

/// Nodes and weights of an n-point rule. For Gauss-Hermite the weights
/// include the e^{-x^2} factor; for Gauss-Legendre the rule is on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const QuadratureRule& gauss_hermite_rule(int n);
const QuadratureRule& gauss_legendre_rule(int n);

/// E[g(Y)] for Y ~ N(mean, variance) by Gauss-Hermite, escalating the node
/// count until two consecutive orders agree. Throws QuadratureError if the
/// ceiling order still disagrees.
double gauss_hermite_expectation(const std::function<double(double)>& g,
                                 double mean, double variance,
                                 const QuadratureOptions& opts = {});

struct IntegralResult {
    double value = 0.0;
    double error_bound = 0.0;
    std::size_t evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod 7-15 on a finite interval.
IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double lo, double hi,
                                  const QuadratureOptions& opts = {});

/// Integral of g over (0, W) with the substitution u = W(1 - q^2), which
/// regularises algebraic endpoint behaviour (W - u)^p for any p > -1/2.
/// Endpoints are open: g is never evaluated at u = 0 or u = W.
IntegralResult integrate_time_kernel(const std::function<double(double)>& g,
                                     double W,
                                     const QuadratureOptions& opts = {});

}  // namespace whk
