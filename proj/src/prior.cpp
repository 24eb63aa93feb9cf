#include "whk/prior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whk {

PriorLaw PriorLaw::atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) throw std::invalid_argument("PriorLaw: empty atom list");
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!(a.weight >= 0.0)) throw std::invalid_argument("PriorLaw: negative atom weight");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("PriorLaw: atom weights must sum to 1 within 1e-12");
    }
    PriorLaw law(Kind::Atoms, 0.0, 0.0);
    law.atoms_ = std::move(atoms);
    return law;
}

PriorLaw PriorLaw::point_mass(double value) {
    return atoms({Atom{value, 1.0}});
}

PriorLaw PriorLaw::gaussian(double mean, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("PriorLaw: variance must be positive");
    return PriorLaw(Kind::Gaussian, mean, variance);
}

PriorLaw PriorLaw::uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("PriorLaw: uniform requires lo < hi");
    return PriorLaw(Kind::Uniform, lo, hi);
}

double PriorLaw::mean() const {
    switch (kind_) {
        case Kind::Atoms: {
            double m = 0.0;
            for (const Atom& a : atoms_) m += a.value * a.weight;
            return m;
        }
        case Kind::Gaussian:
            return a_;
        case Kind::Uniform:
            return 0.5 * (a_ + b_);
    }
    return 0.0;
}

std::pair<double, double> PriorLaw::support_hull() const {
    switch (kind_) {
        case Kind::Atoms: {
            double lo = atoms_.front().value, hi = lo;
            for (const Atom& a : atoms_) {
                lo = std::min(lo, a.value);
                hi = std::max(hi, a.value);
            }
            return {lo, hi};
        }
        case Kind::Gaussian: {
            const double sd = std::sqrt(b_);
            return {a_ - 10.0 * sd, a_ + 10.0 * sd};
        }
        case Kind::Uniform:
            return {a_, b_};
    }
    return {0.0, 0.0};
}

bool PriorLaw::is_point_mass() const {
    if (kind_ != Kind::Atoms) return false;
    int live = 0;
    for (const Atom& a : atoms_) {
        if (a.weight > 0.0) ++live;
    }
    return live == 1;
}

PriorLaw PriorLaw::scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("PriorLaw::scaled: factor must be positive");
    switch (kind_) {
        case Kind::Atoms: {
            std::vector<Atom> scaled_atoms = atoms_;
            for (Atom& a : scaled_atoms) a.value *= c;
            PriorLaw law(Kind::Atoms, 0.0, 0.0);
            law.atoms_ = std::move(scaled_atoms);
            return law;
        }
        case Kind::Gaussian:
            return gaussian(a_ * c, b_ * c * c);
        case Kind::Uniform:
            return uniform(a_ * c, b_ * c);
    }
    throw std::logic_error("PriorLaw::scaled: unknown kind");
}

double PriorLaw::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::Atoms: {
            const double u = rng.uniform01();
            double cum = 0.0;
            for (const Atom& a : atoms_) {
                cum += a.weight;
                if (u <= cum) return a.value;
            }
            return atoms_.back().value;
        }
        case Kind::Gaussian:
            return a_ + std::sqrt(b_) * rng.normal();
        case Kind::Uniform:
            return a_ + (b_ - a_) * rng.uniform01();
    }
    return 0.0;
}

}  // namespace whk
