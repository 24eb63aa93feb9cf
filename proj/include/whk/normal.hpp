#pragma once

#include <cmath>

namespace whk {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
inline constexpr double kInvSqrt2 = 0.7071067811865475244008444;

/// Standard normal density.
inline double norm_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

/// Standard normal distribution function, via erfc for tail accuracy.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

/// Density of N(mean, variance) at x.
inline double gaussian_pdf(double x, double mean, double variance) {
    const double z = (x - mean);
    return kInvSqrt2Pi / std::sqrt(variance) * std::exp(-0.5 * z * z / variance);
}

inline double log_gaussian_pdf(double x, double mean, double variance) {
    const double z = x - mean;
    return -0.5 * z * z / variance - 0.5 * std::log(variance) + std::log(kInvSqrt2Pi);
}

}  // namespace whk
