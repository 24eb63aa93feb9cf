#pragma once

#include <optional>
#include <string>
#include <utility>

#include "whk/kernel_model.hpp"
#include "whk/quadratic_model.hpp"

namespace whk {

/// European call on a discount bond: valued at s, exercising at t into a
/// bond maturing at T, strike K, with the information value L_s observed.
struct OptionSpec {
    double s = 0.0;
    double t = 0.0;
    double T = 0.0;
    double K = 0.0;
    double L_s = 0.0;
};

/// Coefficients of the Gaussian-quadratic integrand c y^2 + b y + a
/// obtained by substituting L_t = nu_st Y + ((U-t)/(U-s)) L_s.
struct QuadCoeffs {
    double A = 0.0;
    double B = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double nu_st = 0.0;
    double discriminant = 0.0;                        // b^2 - 4ac = -4AB nu_st^2
    std::optional<std::pair<double, double>> roots;   // sorted, iff c != 0 and disc > 0
};

enum class OptionCase {
    Intrinsic,       // s = t: immediate exercise, price (P_tT - K)^+
    C0_B0,
    C0_BPos,
    C0_BNeg,
    CNeg_DiscPos,
    CPos_DiscPos,
    CNeg_DiscNonPos,
    CPos_DiscNonPos,
};

std::string option_case_label(OptionCase c);

struct OptionPrice {
    double price = 0.0;
    OptionCase case_taken = OptionCase::C0_B0;
};

void validate_option_spec(const InformationModel& process, const OptionSpec& spec);

QuadCoeffs quad_option_coeffs(const QuadraticModel& model, const OptionSpec& spec);

/// I(lo, hi) = integral of (c y^2 + b y + a) phi(y) over [lo, hi]
///           = (a+c)[N(hi)-N(lo)] + (b+c lo) phi(lo) - (b+c hi) phi(hi).
/// lo/hi may be +-infinity; boundary terms vanish there.
double gaussian_quadratic_integral(double a, double b, double c, double lo, double hi);

/// Closed-form call price under the quadratic model: the positive part of
/// the Gaussian-quadratic integral divided by f(s, L_s), assembled from
/// gaussian_quadratic_integral over the case analysis in the sign of c
/// and the discriminant.
OptionPrice quad_option_price(const QuadraticModel& model, const OptionSpec& spec);

/// Generic pricer: locates the exercise set {z : I(t,z) - K pi(t,z) > 0}
/// by scanning and bisection, then integrates against the transition
/// density of the information process. `bracket` must be wide enough that
/// the integrand is negligible at both ends.
double lrb_option_price_generic(const KernelModel& model, const OptionSpec& spec,
                                std::pair<double, double> bracket,
                                const QuadratureOptions& opts = {});

}  // namespace whk
