#include "whk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

namespace whk {

namespace {

// Orthonormal Hermite recurrence (weight e^{-x^2}); returns p_n(z) and the
// derivative p_n'(z) = sqrt(2n) p_{n-1}(z).
void hermite_eval(int n, double z, double& value, double& derivative) {
    constexpr double kPim4 = 0.7511255444649424828587030;  // pi^{-1/4}
    double p1 = kPim4;
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
    }
    value = p1;
    derivative = std::sqrt(2.0 * n) * p2;
}

// Positive roots located by a bracket scan below the minimal root spacing
// pi/sqrt(2n+1), refined by bisection-safeguarded Newton. Unsafeguarded
// Newton from asymptotic guesses hops across roots in the oscillatory bulk
// once n grows past ~128.
QuadratureRule build_gauss_hermite(int n) {
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const double z_max = std::sqrt(2.0 * n + 1.0);
    const double scan_step = 0.35 * 3.141592653589793238 / z_max;

    int found = 0;
    auto record_root = [&](double root) {
        double value, derivative;
        hermite_eval(n, root, value, derivative);
        const int i = found++;
        rule.nodes[i] = root;
        rule.nodes[n - 1 - i] = -root;
        rule.weights[i] = 2.0 / (derivative * derivative);
        rule.weights[n - 1 - i] = rule.weights[i];
    };

    if (n % 2 == 1) record_root(0.0);

    const int m = n / 2;
    double lo = n % 2 == 1 ? 0.5 * scan_step : 0.0;
    double f_lo, df;
    hermite_eval(n, lo, f_lo, df);
    int positives = 0;
    while (positives < m && lo < z_max + 2.0) {
        double hi = lo + scan_step;
        double f_hi;
        hermite_eval(n, hi, f_hi, df);
        if ((f_lo > 0.0) != (f_hi > 0.0)) {
            // bisection steps, then Newton confined to the bracket
            double a = lo, b = hi, fa = f_lo;
            for (int it = 0; it < 8; ++it) {
                const double mid = 0.5 * (a + b);
                double f_mid;
                hermite_eval(n, mid, f_mid, df);
                if ((f_mid > 0.0) == (fa > 0.0)) {
                    a = mid;
                    fa = f_mid;
                } else {
                    b = mid;
                }
            }
            double z = 0.5 * (a + b);
            for (int it = 0; it < 48; ++it) {
                double value, derivative;
                hermite_eval(n, z, value, derivative);
                double z_next = z - value / derivative;
                if (!(z_next > a) || !(z_next < b)) z_next = 0.5 * (a + b);
                if ((value > 0.0) == (fa > 0.0)) {
                    a = z;
                    fa = value;
                } else {
                    b = z;
                }
                if (std::abs(z_next - z) <= 1e-15 * std::max(1.0, std::abs(z_next))) {
                    z = z_next;
                    break;
                }
                z = z_next;
            }
            record_root(z);
            ++positives;
        }
        lo = hi;
        f_lo = f_hi;
    }
    return rule;
}

QuadratureRule build_gauss_legendre(int n) {
    constexpr int kMaxIt = 100;
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(3.141592653589793238 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < kMaxIt; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

const QuadratureRule& cached_rule(int n, QuadratureRule (*builder)(int),
                                  std::map<int, QuadratureRule>& cache,
                                  std::mutex& mutex) {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, builder(n)).first;
    return it->second;
}

// QUADPACK dqk15 constants: 15-point Kronrod with embedded 7-point Gauss.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double kronrod = 0.0;
    double error = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double halflen = 0.5 * (hi - lo);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    double resabs = std::abs(result_kronrod);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double abscissa = halflen * kXgk[j];
        fv1[j] = f(center - abscissa);
        fv2[j] = f(center + abscissa);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
        result_kronrod += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }

    const double mean = result_kronrod * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }

    PanelResult out;
    out.kronrod = result_kronrod * halflen;
    resabs *= std::abs(halflen);
    resasc *= std::abs(halflen);
    double err = std::abs((result_kronrod - result_gauss) * halflen);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50) {
        err = std::max(err, eps50 * resabs);
    }
    out.error = err;
    return out;
}

struct Interval {
    double lo, hi, value, error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace

const QuadratureRule& gauss_hermite_rule(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    return cached_rule(n, build_gauss_hermite, cache, mutex);
}

const QuadratureRule& gauss_legendre_rule(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    return cached_rule(n, build_gauss_legendre, cache, mutex);
}

double gauss_hermite_expectation(const std::function<double(double)>& g,
                                 double mean, double variance,
                                 const QuadratureOptions& opts) {
    if (variance < 0.0) throw std::domain_error("gauss_hermite_expectation: negative variance");
    if (variance == 0.0) return g(mean);

    constexpr double kInvSqrtPi = 0.5641895835477562869481;
    const double scale = std::sqrt(2.0 * variance);
    auto evaluate = [&](int n) {
        const QuadratureRule& rule = gauss_hermite_rule(n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += rule.weights[i] * g(mean + scale * rule.nodes[i]);
        }
        return acc * kInvSqrtPi;
    };

    double prev = evaluate(std::max(8, opts.gh_nodes / 2));
    double last_diff = std::abs(prev);
    for (int n = opts.gh_nodes; n <= opts.gh_max_nodes; n *= 2) {
        const double cur = evaluate(n);
        last_diff = std::abs(cur - prev);
        if (last_diff <= std::max(opts.abs_tol, opts.gh_rel_tol * std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    throw QuadratureError("gauss_hermite_expectation: node escalation did not converge",
                          prev, last_diff);
}

IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double lo, double hi,
                                  const QuadratureOptions& opts) {
    IntegralResult out;
    if (lo == hi) return out;

    std::size_t evals = 15;
    PanelResult first = gk15(f, lo, hi);
    std::priority_queue<Interval> heap;
    heap.push({lo, hi, first.kronrod, first.error});
    double total = first.kronrod;
    double total_err = first.error;

    int n_intervals = 1;
    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (n_intervals >= opts.max_intervals) {
            throw QuadratureError("integrate_adaptive: interval budget exhausted",
                                  total, total_err);
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval at floating-point resolution; accept its estimate
            total_err -= worst.error;
            continue;
        }
        PanelResult left = gk15(f, worst.lo, mid);
        PanelResult right = gk15(f, mid, worst.hi);
        evals += 30;
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.lo, mid, left.kronrod, left.error});
        heap.push({mid, worst.hi, right.kronrod, right.error});
        ++n_intervals;
    }

    out.value = total;
    out.error_bound = total_err;
    out.evaluations = evals;
    return out;
}

IntegralResult integrate_time_kernel(const std::function<double(double)>& g,
                                     double W, const QuadratureOptions& opts) {
    if (W <= 0.0) throw std::domain_error("integrate_time_kernel: nonpositive length");
    auto transformed = [&](double q) {
        const double u = W * (1.0 - q * q);
        return g(u) * 2.0 * W * q;
    };
    return integrate_adaptive(transformed, 0.0, 1.0, opts);
}

}  // namespace whk
