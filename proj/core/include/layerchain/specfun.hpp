#pragma once

namespace layerchain::specfun {

// Function value together with a conservative absolute error estimate.
struct FnEvalResult {
    double value = 0.0;
    double absolute_error_estimate = 0.0;
};

// log|Gamma(x)| plus the sign of Gamma(x) between poles.  Keeping the
// magnitude in log form lets callers form gamma ratios arbitrarily close to
// the poles without overflow.
struct LnGammaResult {
    double log_abs = 0.0;
    int sign = 1;  // sign of Gamma(x), +1 or -1
    double absolute_error_estimate = 0.0;
};

// Throws domain_error when x is a non-positive integer (within 1e-14).
LnGammaResult ln_gamma(double x);

// 1/Gamma(x).  Returns exactly 0 at the poles instead of throwing, which is
// the limit the hypergeometric connection formulas need.
double reciprocal_gamma(double x);

// psi(x) = d/dx ln Gamma(x).  Throws domain_error at non-positive integers.
FnEvalResult digamma(double x);

// psi'(x).  Same pole behaviour as digamma.
FnEvalResult trigamma(double x);

// Generalized Laguerre polynomial L_n^alpha(z) by the three-term recurrence.
FnEvalResult assoc_laguerre(int n, double alpha, double z);

// Kummer's confluent hypergeometric M(a, b, z) = 1F1(a; b; z).
// Throws domain_error when b is a non-positive integer.
FnEvalResult kummer_m(double a, double b, double z);

// Tricomi's confluent hypergeometric U(a, b, z) for z > 0.
// Supported second parameters: any non-integer b, b = 1/2, and b = 1
// (the logarithmic limit).  Non-positive integer a reduces to a Laguerre
// polynomial for every b.  Large z switches to the divergent asymptotic
// series truncated at its smallest term.
FnEvalResult tricomi_u(double a, double b, double z);

}  // namespace layerchain::specfun
