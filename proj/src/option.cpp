#include "whk/option.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "whk/kernel_engine.hpp"
#include "whk/normal.hpp"

namespace whk {

std::string option_case_label(OptionCase c) {
    switch (c) {
        case OptionCase::Intrinsic: return "intrinsic";
        case OptionCase::C0_B0: return "c0_b0";
        case OptionCase::C0_BPos: return "c0_bpos";
        case OptionCase::C0_BNeg: return "c0_bneg";
        case OptionCase::CNeg_DiscPos: return "cneg_disc_pos";
        case OptionCase::CPos_DiscPos: return "cpos_disc_pos";
        case OptionCase::CNeg_DiscNonPos: return "cneg_disc_nonpos";
        case OptionCase::CPos_DiscNonPos: return "cpos_disc_nonpos";
    }
    return "unknown";
}

void validate_option_spec(const InformationModel& process, const OptionSpec& spec) {
    if (!(spec.s >= 0.0) || !(spec.t >= spec.s) || !(spec.T >= spec.t)) {
        throw std::domain_error("OptionSpec: requires 0 <= s <= t <= T");
    }
    process.require_time(spec.T);
    // K = 0 is admitted as the bond-forward limit; the CLI enforces K > 0
    if (!(spec.K >= 0.0)) throw std::domain_error("OptionSpec: strike must be nonnegative");
}

QuadCoeffs quad_option_coeffs(const QuadraticModel& model, const OptionSpec& spec) {
    validate_option_spec(model.process, spec);
    if (spec.s == spec.t) {
        throw std::domain_error("quad_option_coeffs: s = t is the immediate-exercise case");
    }
    const double U = model.process.horizon();
    const double Wt = U - spec.t;
    const double WT = U - spec.T;
    const double Ws = U - spec.s;

    QuadCoeffs k;
    k.A = 0.25 * (spec.T - spec.t) * WT * WT * WT / Wt +
          (WT * WT * WT - spec.K * Wt * Wt * Wt) / 12.0;
    k.B = 0.25 * (WT * WT * WT * WT / (Wt * Wt) - spec.K * Wt * Wt);
    k.nu_st = std::sqrt((spec.t - spec.s) * Wt / Ws);

    const double alpha = Wt / Ws;
    k.a = k.A + k.B * alpha * alpha * spec.L_s * spec.L_s;
    k.b = 2.0 * k.B * k.nu_st * alpha * spec.L_s;
    k.c = k.B * k.nu_st * k.nu_st;

    // b^2 - 4ac collapses algebraically to -4AB nu^2; use the collapsed
    // form (no cancellation) and keep the direct form as a sanity check.
    k.discriminant = -4.0 * k.A * k.B * k.nu_st * k.nu_st;
    const double direct = k.b * k.b - 4.0 * k.a * k.c;
    const double scale = std::abs(k.b * k.b) + std::abs(4.0 * k.a * k.c) +
                         std::abs(k.discriminant) + 1.0;
    if (std::abs(direct - k.discriminant) > 1e-10 * scale) {
        throw std::logic_error("quad_option_coeffs: discriminant identity violated");
    }

    if (k.c != 0.0 && k.discriminant > 0.0) {
        // stable quadratic roots
        const double sq = std::sqrt(k.discriminant);
        double y1, y2;
        if (k.b == 0.0) {
            y1 = -sq / (2.0 * k.c);
            y2 = sq / (2.0 * k.c);
        } else {
            const double q = -0.5 * (k.b + std::copysign(sq, k.b));
            y1 = q / k.c;
            y2 = k.a / q;
        }
        if (y1 > y2) std::swap(y1, y2);
        k.roots = std::make_pair(y1, y2);
    }
    return k;
}

double gaussian_quadratic_integral(double a, double b, double c, double lo, double hi) {
    if (!(lo <= hi)) throw std::domain_error("gaussian_quadratic_integral: requires lo <= hi");
    auto boundary = [&](double z) {
        if (std::isinf(z)) return 0.0;
        return (b + c * z) * norm_pdf(z);
    };
    const double n_hi = std::isinf(hi) ? (hi > 0 ? 1.0 : 0.0) : norm_cdf(hi);
    const double n_lo = std::isinf(lo) ? (lo > 0 ? 1.0 : 0.0) : norm_cdf(lo);
    return (a + c) * (n_hi - n_lo) + boundary(lo) - boundary(hi);
}

OptionPrice quad_option_price(const QuadraticModel& model, const OptionSpec& spec) {
    validate_option_spec(model.process, spec);

    if (spec.s == spec.t) {
        const double intrinsic =
            quad_bond_price(model, spec.t, spec.T, spec.L_s) - spec.K;
        return {std::max(intrinsic, 0.0), OptionCase::Intrinsic};
    }

    const QuadCoeffs k = quad_option_coeffs(model, spec);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    double integral_pos = 0.0;
    OptionCase taken;
    if (k.c == 0.0 && k.b == 0.0) {
        integral_pos = std::max(k.a, 0.0);
        taken = OptionCase::C0_B0;
    } else if (k.c == 0.0) {
        const double crossing = -k.a / k.b;
        if (k.b > 0.0) {
            integral_pos = gaussian_quadratic_integral(k.a, k.b, 0.0, crossing, kInf);
            taken = OptionCase::C0_BPos;
        } else {
            integral_pos = gaussian_quadratic_integral(k.a, k.b, 0.0, -kInf, crossing);
            taken = OptionCase::C0_BNeg;
        }
    } else if (k.c < 0.0) {
        if (k.discriminant > 0.0) {
            integral_pos =
                gaussian_quadratic_integral(k.a, k.b, k.c, k.roots->first, k.roots->second);
            taken = OptionCase::CNeg_DiscPos;
        } else {
            integral_pos = 0.0;
            taken = OptionCase::CNeg_DiscNonPos;
        }
    } else {
        if (k.discriminant > 0.0) {
            integral_pos =
                (k.a + k.c) -
                gaussian_quadratic_integral(k.a, k.b, k.c, k.roots->first, k.roots->second);
            taken = OptionCase::CPos_DiscPos;
        } else {
            integral_pos = k.a + k.c;
            taken = OptionCase::CPos_DiscNonPos;
        }
    }

    const double price = std::max(integral_pos, 0.0) / quad_f(model, spec.s, spec.L_s);
    return {price, taken};
}

namespace {

double bisect_sign_change(const std::function<double(double)>& h, double lo, double hi,
                          double h_lo, double tol) {
    // invariant: sign(h(lo)) != sign(h(hi))
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = h(mid);
        if ((h_mid > 0.0) == (h_lo > 0.0)) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double lrb_option_price_generic(const KernelModel& model, const OptionSpec& spec,
                                std::pair<double, double> bracket,
                                const QuadratureOptions& opts) {
    validate_option_spec(model.process(), spec);

    if (spec.s == spec.t) {
        const double intrinsic =
            price_bond_generic(model, spec.t, spec.T, spec.L_s, opts) - spec.K;
        return std::max(intrinsic, 0.0);
    }

    auto h = [&](double z) {
        return bond_numerator_generic(model, spec.t, spec.T, z, opts) -
               spec.K * eval_weighted_heat_kernel(model, spec.t, z, opts);
    };

    std::function<double(double)> density;
    if (model.dynamics() == Dynamics::BridgeMeasure) {
        const BridgeLaw law =
            bridge_conditional_law(model.process(), spec.s, spec.t, spec.L_s);
        density = [law](double z) { return gaussian_pdf(z, law.mean, law.variance); };
    } else {
        const double U = model.process().horizon();
        density = [&model, &spec, U](double z) {
            return lrb_transition_density(model.lrb_density(), model.lrb_terminal(), U,
                                          spec.s, spec.t, spec.L_s, z);
        };
    }

    const auto [z_min, z_max] = bracket;
    if (!(z_min < z_max)) throw std::invalid_argument("lrb_option_price_generic: bad bracket");
    if (std::abs(h(z_min)) * density(z_min) > 1e-12 ||
        std::abs(h(z_max)) * density(z_max) > 1e-12) {
        throw std::invalid_argument("lrb_option_price_generic: bracket too narrow");
    }

    // scan for sign changes of h, refine by bisection
    constexpr int kScanPoints = 512;
    constexpr int kMaxSignChanges = 8;
    std::vector<double> cuts{z_min};
    double prev_z = z_min;
    double prev_h = h(prev_z);
    int sign_changes = 0;
    const double tol = 1e-12 * (z_max - z_min);
    for (int i = 1; i <= kScanPoints; ++i) {
        const double z = z_min + (z_max - z_min) * i / kScanPoints;
        const double hz = h(z);
        if ((hz > 0.0) != (prev_h > 0.0)) {
            if (++sign_changes > kMaxSignChanges) {
                throw std::runtime_error(
                    "lrb_option_price_generic: more than 8 sign changes in the scan");
            }
            cuts.push_back(bisect_sign_change(h, prev_z, z, prev_h, tol));
        }
        prev_z = z;
        prev_h = hz;
    }
    cuts.push_back(z_max);

    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double mid_value = h(0.5 * (lo + hi));
        if (mid_value <= 0.0) continue;  // exercise set only
        auto integrand = [&](double z) { return std::max(h(z), 0.0) * density(z); };
        integral += integrate_adaptive(integrand, lo, hi, opts).value;
    }

    return integral / eval_weighted_heat_kernel(model, spec.s, spec.L_s, opts);
}

}  // namespace whk
