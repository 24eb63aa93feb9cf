#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "whk/expquad_model.hpp"
#include "whk/kernel_model.hpp"
#include "whk/quadratic_model.hpp"

namespace whk {

struct CheckReport {
    std::string check_name;
    bool passed = false;
    double worst_case = 0.0;
    double tolerance = 0.0;
    std::string witness;
    std::size_t samples_used = 0;
    double wall_time_s = 0.0;
    std::string note;
};

enum class CheckMethod { Quadrature, MonteCarlo };

struct SupermartingaleCheckConfig {
    std::vector<std::pair<double, double>> time_pairs;  // ordered s < t < U
    std::vector<double> x_grid;
    CheckMethod method = CheckMethod::Quadrature;
    double tolerance = 1e-10;      // quadrature slack; MC uses a 3 SE z-score
    std::size_t n_paths = 100000;  // MC only
    std::uint64_t seed = 0x5eed;
    QuadratureOptions quadrature;
};

/// E[f(t, L_t) | L_s = x] under the bridge measure, by Gauss-Hermite.
double bridge_conditional_expectation(const InformationModel& process,
                                      const std::function<double(double, double)>& f,
                                      double s, double t, double x,
                                      const QuadratureOptions& opts = {});

/// Supermartingale check for an arbitrary positive surface f(t, x) driven
/// by the bridge dynamics of `process`. Quadrature mode asserts
/// E[f(t, L_t) | L_s = x] <= f(s, x) + tolerance; Monte Carlo mode uses a
/// 3-standard-error z-score with common random numbers across grid points.
CheckReport check_supermartingale(const InformationModel& process,
                                  const std::function<double(double, double)>& f,
                                  const std::string& label,
                                  const SupermartingaleCheckConfig& cfg);

/// Same check with f taken from the kernel model: the tagged closed form
/// when present, the quadrature weighted heat kernel otherwise.
CheckReport check_supermartingale(const KernelModel& model,
                                  const SupermartingaleCheckConfig& cfg);

/// Left side of the pricing-kernel differential inequality
/// (x/(U-t)) f_x - (1/2) f_xx - f_t by central differences.
double pde_inequality_lhs(const std::function<double(double, double)>& f, double U,
                          double t, double x, double dt, double dx);

struct PdeCheckConfig {
    std::vector<double> t_grid;
    std::vector<double> x_grid;
    double dt = 0.0;  // 0 means 1e-4 * U
    double dx = 0.0;
    double tolerance = 1e-6;
};

/// Finite-difference check that the inequality left side is nonnegative on
/// the grid. Steps are Richardson-validated; a failed validation throws.
CheckReport check_pde_inequality(const std::function<double(double, double)>& f, double U,
                                 const std::string& label, const PdeCheckConfig& cfg);

struct MeasureChangeConfig {
    std::vector<double> t_grid;
    std::size_t n_paths = 100000;
    std::size_t n_paths_euler = 2000;
    std::uint64_t seed = 0x5eed;
    double euler_step_fraction = 1e-3;  // step = fraction * U
    double euler_rms_tolerance = 1e-2;
    double m_bias = 1.0;  // fault injection: multiplies the closed-form M
};

/// Validates the measure-change martingale three ways: unit expectation
/// under P, Euler integration of its SDE against the closed form, and a
/// Gaussian variance test on the reconstructed Brownian increments.
std::vector<CheckReport> check_measure_change(const InformationModel& model,
                                              const MeasureChangeConfig& cfg);

struct EquivalenceConfig {
    std::vector<double> t_grid;
    std::vector<double> T_grid;
    std::vector<double> x_grid;
    double tolerance = 1e-8;
    QuadratureOptions quadrature;
};

/// Closed forms against the generic quadrature engine on a standard grid.
std::vector<CheckReport> check_closed_form_equivalence(const QuadraticModel& quad,
                                                       const ExpQuadraticModel& expquad,
                                                       const EquivalenceConfig& cfg);

/// Documented corrections to the printed formulas, each cross-checked
/// against an independent oracle and reported with a prose note.
std::vector<CheckReport> errata_report(const QuadraticModel& quad,
                                       const ExpQuadraticModel& expquad);

struct SuiteConfig {
    std::uint64_t seed = 0x5eed;
    std::size_t n_paths = 100000;
};

/// Named check suites ("default", "supermartingale", "pde",
/// "measure-change", "equivalence", "errata", "injected-bug"). Throws
/// std::invalid_argument for unknown names.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg);

std::string summary_table(const std::vector<CheckReport>& reports);

}  // namespace whk
