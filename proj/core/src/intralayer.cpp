#include "layerchain/intralayer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "layerchain/errors.hpp"
#include "layerchain/specfun.hpp"

namespace layerchain {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// --- root bracketing ------------------------------------------------------

// Overflow-safe logistic map R -> (0, 1).
double logistic(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// Bisect a strictly decreasing f(t) down to adjacent doubles in t, where t is
// the stretch coordinate nu = branch_start + width * logistic(t).  Both ends
// of every branch interval are poles of the eigenvalue equations; in t the
// equations are asymptotically linear with O(1) slope, so the 1e-12 residual
// gate stays attainable even when extreme couplings push the root within
// ~1e-6 of a pole.  |t| <= 29 keeps the pole distance above ~2.5e-13, clear
// of the gamma / digamma pole guards; couplings extreme enough to push the
// root closer than that fail the sign check.
double bisect_stretched(const std::function<double(double)>& f, const char* what) {
    double tlo = -29.0;
    double thi = 29.0;
    if (!(f(tlo) > 0.0) || !(f(thi) < 0.0))
        throw numeric_error(std::string(what) + ": root bracket failed");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (tlo + thi);
        if (mid <= tlo || mid >= thi) break;  // down to adjacent doubles in t
        if (f(mid) > 0.0)
            tlo = mid;
        else
            thi = mid;
    }
    return 0.5 * (tlo + thi);
}

// Monotone reparameterization of the 1D even-sector eigenvalue equation
//   a1/b = -Gamma(-nu) / (2 Gamma(1/2 - nu))   on nu in (n, n + 1/2):
// G = ln|Gamma(-nu)| - ln|Gamma(1/2 - nu)| - ln 2 - ln(a1/b), strictly
// decreasing from +inf to -inf in t on each branch interval.
//
// nu is never materialized: with eps = nu - n and delta = n + 1/2 - nu held
// at full relative precision through the logistic map, the gamma recurrence
// factors both poles out of the Lanczos evaluations,
//   ln|Gamma(-nu)|        = ln Gamma(1-eps)   - ln eps   - sum_{j=1..n} ln(j+eps)
//   ln|Gamma(1/2 - nu)|   = ln Gamma(1+delta) - ln delta - sum_{j=1..n} ln(j-delta).
// Rounding nu to a double first would floor the residual at |G'| * ulp(nu),
// which exceeds 1e-12 once a1/b passes ~1e4 in either direction.
double delta1d_equation_stretched(int n, double t, double log_q) {
    const double eps = 0.5 * logistic(t);
    const double delta = 0.5 * logistic(-t);
    double g = specfun::ln_gamma(1.0 - eps).log_abs - std::log(eps);
    g -= specfun::ln_gamma(1.0 + delta).log_abs - std::log(delta);
    for (int j = 1; j <= n; ++j)
        g -= std::log(j + eps) - std::log(j - delta);
    return g - 0.6931471805599453094 - log_q;
}

double solve_delta1d_root(int n, double a1_over_b) {
    const double log_q = std::log(a1_over_b);
    const auto f = [n, log_q](double t) { return delta1d_equation_stretched(n, t, log_q); };
    const double t = bisect_stretched(f, "delta1d_levels");
    if (std::abs(f(t)) > 1e-12)
        throw numeric_error("delta1d_levels: root residual above 1e-12");
    return n + 0.5 * logistic(t);
}

// Loose nu-space form of the same equation, for validating that a caller's
// (level, strength) pair belongs together; fine at rounded nu because the
// pairing tolerance is 1e-6.
double delta1d_equation(double nu, double log_q) {
    const auto g1 = specfun::ln_gamma(-nu);
    const auto g2 = specfun::ln_gamma(0.5 - nu);
    return g1.log_abs - g2.log_abs - 0.6931471805599453094 - log_q;
}

// 2D s-wave equation gamma_E + psi(-nu)/2 = ln(b/a2) on nu in (n, n+1),
// reparameterized as G = (gamma_E + psi(-nu)/2 - L) / max(1, |L - gamma_E|),
// strictly decreasing in t.  The divisor keeps the residual gate meaningful
// for large |L|, where the equation's value scale is |L| itself.  As above
// the poles are factored through the digamma recurrence with sigma = nu - n
// and 1 - sigma both held at relative precision:
//   psi(-nu) = psi(1 - sigma) + 1/sigma + sum_{m=1..n} 1/(m + sigma).
double delta2d_equation_stretched(int n, double t, double ln_b_over_a2, double scale) {
    const double sigma = logistic(t);
    const double one_minus_sigma = logistic(-t);
    double psi = specfun::digamma(one_minus_sigma).value + 1.0 / sigma;
    for (int m = 1; m <= n; ++m) psi += 1.0 / (m + sigma);
    return (kEulerGamma + 0.5 * psi - ln_b_over_a2) / scale;
}

double solve_delta2d_root(int n, double ln_b_over_a2) {
    const double scale = std::max(1.0, std::abs(ln_b_over_a2 - kEulerGamma));
    const auto f = [n, ln_b_over_a2, scale](double t) {
        return delta2d_equation_stretched(n, t, ln_b_over_a2, scale);
    };
    const double t = bisect_stretched(f, "delta2d_levels");
    if (std::abs(f(t)) > 1e-12)
        throw numeric_error("delta2d_levels: root residual above 1e-12");
    return n + logistic(t);
}

// --- quadrature -----------------------------------------------------------

struct GaussRule {
    double node[24];
    double weight[24];
};

// 24-point Gauss-Legendre rule on [0, 1], generated once by Newton iteration
// on P_24.
const GaussRule& gauss24() {
    static const GaussRule rule = [] {
        GaussRule r;
        constexpr int n = 24;
        for (int i = 0; i < n; ++i) {
            // Chebyshev-like initial guess for the i-th root of P_n
            double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            r.node[n - 1 - i] = 0.5 * (1.0 + x);
            r.weight[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

// Integrate f over (0, 12] with geometrically graded panels toward the
// origin (the 2D integrand has a log singularity there), each panel refined
// uniformly until two successive refinements agree to 1e-11 relative.
double integrate_radial(const std::function<double(double)>& f) {
    const GaussRule& rule = gauss24();
    const auto pass = [&](int split) {
        double total = 0.0;
        double hi = 12.0;
        for (int j = 0; j < 44; ++j) {
            const double lo = (j + 1 < 44) ? hi * 0.5 : 0.0;
            const double width = (hi - lo) / split;
            for (int s = 0; s < split; ++s) {
                const double a = lo + s * width;
                double acc = 0.0;
                for (int i = 0; i < 24; ++i)
                    acc += rule.weight[i] * f(a + width * rule.node[i]);
                total += acc * width;
            }
            hi = lo;
        }
        return total;
    };
    double prev = pass(1);
    for (int split = 2; split <= 16; split *= 2) {
        const double cur = pass(split);
        if (std::abs(cur - prev) <= 1e-11 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

IntraLevel make_delta_level(IntraLevelKind kind, double nu, double energy,
                            double msr) {
    IntraLevel level;
    level.kind = kind;
    level.quantum_number = nu;
    level.l_eff = 0.0;
    level.energy = energy;
    level.msr = msr;
    level.omega_k = 1.0;
    return level;
}

// Hellmann-Feynman mean square radius, exact up to the digamma accuracy.
double msr_hf_1d_even(double nu) {
    const double denom =
        specfun::digamma(0.5 - nu).value - specfun::digamma(-nu).value;
    return 2.0 * nu + 0.5 + 1.0 / denom;
}

double msr_hf_2d(double nu) {
    return 2.0 * nu + 1.0 + 2.0 / specfun::trigamma(-nu).value;
}

}  // namespace

std::vector<IntraLevel> inverse_square_levels(double g, int dimension,
                                              int angular, int count) {
    if (g < 0.0)
        throw domain_error("inverse_square_levels: attractive g < 0 is excluded");
    if (dimension < 1 || dimension > 3)
        throw domain_error("inverse_square_levels: dimension must be 1, 2, or 3");
    if (angular < 0 || (dimension == 1 && angular != 0))
        throw domain_error("inverse_square_levels: invalid angular quantum number");
    if (count < 1) throw domain_error("inverse_square_levels: count must be >= 1");

    double l_eff = 0.0;
    switch (dimension) {
        case 1:
            l_eff = std::sqrt(g + 0.25) - 0.5;
            break;
        case 2:
            l_eff = std::sqrt(g + 0.25 * angular * angular) - 0.5;
            break;
        case 3:
            l_eff = std::sqrt(g + (angular + 0.5) * (angular + 0.5)) - 0.5;
            break;
    }

    std::vector<IntraLevel> levels;
    levels.reserve(count);
    for (int n = 0; n < count; ++n) {
        IntraLevel level;
        level.kind = IntraLevelKind::inverse_square;
        level.quantum_number = n;
        level.l_eff = l_eff;
        level.energy = 2.0 * n + l_eff + 1.5;
        level.msr = level.energy;
        level.omega_k = 1.0;
        levels.push_back(level);
    }
    return levels;
}

std::vector<IntraLevel> delta1d_levels(double a1_over_b, int count) {
    if (!(a1_over_b > 0.0))
        throw domain_error("delta1d_levels: a1/b must be positive");
    if (count < 1) throw domain_error("delta1d_levels: count must be >= 1");

    std::vector<IntraLevel> levels;
    levels.reserve(2 * count);
    for (int n = 0; n < count; ++n) {
        const double nu = solve_delta1d_root(n, a1_over_b);
        levels.push_back(make_delta_level(IntraLevelKind::delta1d_even, nu,
                                          2.0 * nu + 0.5, msr_hf_1d_even(nu)));
        // odd sector: node at the origin, untouched by the contact term
        const double nu_odd = n + 0.5;
        levels.push_back(make_delta_level(IntraLevelKind::delta1d_odd, nu_odd,
                                          2.0 * nu_odd + 0.5, 2.0 * nu_odd + 0.5));
    }
    std::sort(levels.begin(), levels.end(),
              [](const IntraLevel& a, const IntraLevel& b) { return a.energy < b.energy; });
    return levels;
}

std::vector<IntraLevel> delta2d_levels(double ln_b_over_a2, int count) {
    if (!std::isfinite(ln_b_over_a2))
        throw domain_error("delta2d_levels: ln(b/a2) must be finite");
    if (count < 1) throw domain_error("delta2d_levels: count must be >= 1");

    std::vector<IntraLevel> levels;
    levels.reserve(count);
    for (int n = 0; n < count; ++n) {
        const double nu = solve_delta2d_root(n, ln_b_over_a2);
        levels.push_back(make_delta_level(IntraLevelKind::delta2d_s, nu,
                                          2.0 * nu + 1.0, msr_hf_2d(nu)));
    }
    return levels;
}

double wavefunction_eval(const IntraLevel& level, double x_over_b) {
    if (!(x_over_b > 0.0))
        throw domain_error("wavefunction_eval: requires x/b > 0");
    const double x = x_over_b;
    const double z = x * x;
    const double envelope = std::exp(-0.5 * z);
    switch (level.kind) {
        case IntraLevelKind::inverse_square: {
            const int n = static_cast<int>(std::lround(level.quantum_number));
            const double lag = specfun::assoc_laguerre(n, level.l_eff + 0.5, z).value;
            return std::pow(x, level.l_eff + 1.0) * envelope * lag;
        }
        case IntraLevelKind::delta1d_even:
            return envelope * specfun::tricomi_u(-level.quantum_number, 0.5, z).value;
        case IntraLevelKind::delta1d_odd: {
            const int n = static_cast<int>(std::lround(level.quantum_number - 0.5));
            return x * envelope * specfun::assoc_laguerre(n, 0.5, z).value;
        }
        case IntraLevelKind::delta2d_s:
            return envelope * specfun::tricomi_u(-level.quantum_number, 1.0, z).value;
    }
    throw domain_error("wavefunction_eval: unknown level kind");
}

MsrRoutes delta_msr_routes(const IntraLevel& level, double strength) {
    if (level.kind == IntraLevelKind::inverse_square)
        throw domain_error("delta_msr: level is not from a delta solver");

    MsrRoutes routes{};
    switch (level.kind) {
        case IntraLevelKind::delta1d_even:
            if (!(strength > 0.0) ||
                std::abs(delta1d_equation(level.quantum_number, std::log(strength))) > 1e-6)
                throw domain_error("delta_msr: level does not solve the 1D equation "
                                   "at this strength");
            routes.hellmann_feynman = msr_hf_1d_even(level.quantum_number);
            break;
        case IntraLevelKind::delta1d_odd:
            // exact oscillator state: virial value, no strength dependence
            routes.hellmann_feynman = level.energy;
            break;
        case IntraLevelKind::delta2d_s:
            if (std::abs(kEulerGamma +
                         0.5 * specfun::digamma(-level.quantum_number).value -
                         strength) > 1e-6)
                throw domain_error("delta_msr: level does not solve the 2D equation "
                                   "at this strength");
            routes.hellmann_feynman = msr_hf_2d(level.quantum_number);
            break;
        default:
            break;
    }

    // weight x^{D-1} dx on the half line
    const int weight_power = level.kind == IntraLevelKind::delta2d_s ? 1 : 0;
    const auto psi = [&level](double x) { return wavefunction_eval(level, x); };
    const auto norm_integrand = [&](double x) {
        const double p = psi(x);
        return p * p * (weight_power ? x : 1.0);
    };
    const auto x2_integrand = [&](double x) {
        const double p = psi(x);
        return x * x * p * p * (weight_power ? x : 1.0);
    };
    const double norm = integrate_radial(norm_integrand);
    if (!(norm > 0.0))
        throw numeric_error("delta_msr: wavefunction normalization vanished");
    routes.quadrature = integrate_radial(x2_integrand) / norm;
    return routes;
}

double delta_msr(const IntraLevel& level, double strength) {
    const MsrRoutes routes = delta_msr_routes(level, strength);
    if (std::abs(routes.quadrature - routes.hellmann_feynman) > 1e-3)
        throw numeric_error(
            "delta_msr: quadrature and Hellmann-Feynman routes disagree "
            "beyond 1e-3 (special-function defect)");
    return routes.quadrature;
}

}  // namespace layerchain
