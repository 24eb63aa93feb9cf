#pragma once

#include <utility>
#include <vector>

#include "whk/rng.hpp"

namespace whk {

struct Atom {
    double value = 0.0;
    double weight = 0.0;
};

/// Law of the terminal economic factor. Three variants: a finite list of
/// atoms, a Gaussian, or a uniform interval. Atom weights must sum to 1
/// within 1e-12; continuous variants are normalised by construction.
class PriorLaw {
public:
    enum class Kind { Atoms, Gaussian, Uniform };

    static PriorLaw atoms(std::vector<Atom> atoms);
    static PriorLaw point_mass(double value);
    static PriorLaw gaussian(double mean, double variance);
    static PriorLaw uniform(double lo, double hi);

    Kind kind() const { return kind_; }
    const std::vector<Atom>& atom_list() const { return atoms_; }
    double gaussian_mean() const { return a_; }
    double gaussian_variance() const { return b_; }
    double uniform_lo() const { return a_; }
    double uniform_hi() const { return b_; }

    double mean() const;

    /// Convex hull of the support. Gaussian support is reported as
    /// mean +- 10 standard deviations (used for quadrature brackets).
    std::pair<double, double> support_hull() const;

    bool is_point_mass() const;

    /// Image law under x -> c*x, c > 0.
    PriorLaw scaled(double c) const;

    double sample(Rng& rng) const;

private:
    PriorLaw(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_ = 0.0;  // gaussian mean / uniform lo
    double b_ = 0.0;  // gaussian variance / uniform hi
    std::vector<Atom> atoms_;
};

}  // namespace whk
