#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dunkl {

using complex = std::complex<double>;

/// Truncation policy shared by every series in this module.
struct SeriesControl {
    double rel_tol = 1e-13;
    int max_terms = 500;

    /// Throws std::invalid_argument unless rel_tol > 0 and max_terms >= 1.
    void validate() const;
};

/// ln Gamma(x) for x > 0 (Lanczos approximation, g = 7, nine coefficients).
double log_gamma(double x);

/// Gamma(x) for x > 0.
double gamma_function(double x);

/// Modified Bessel function of the first kind I_order(z), principal branch.
/// Ascending series for |z| <= 17, Hankel-type asymptotic expansion beyond.
/// Requires order > -1; z = 0 with order < 0 is a domain error.
complex modified_bessel_i(double order, complex z, const SeriesControl& control = {});

/// exp(-|Re z|) * I_order(z). Finite wherever the scaled value is representable.
complex modified_bessel_i_scaled(double order, complex z, const SeriesControl& control = {});

/// Regularized form (z/2)^(-order) I_order(z) = sum_k (z^2/4)^k / (k! Gamma(order + k + 1)).
/// Entire and even in z, so there is no branch cut.
complex bessel_i_regularized(double order, complex z, const SeriesControl& control = {});

/// exp(-|Re z|) * bessel_i_regularized(order, z).
complex bessel_i_regularized_scaled(double order, complex z, const SeriesControl& control = {});

/// Generalized Laguerre polynomial L_n^mu(x) by upward three-term recurrence.
double laguerre(int n, double mu, double x);

/// L_0^mu(x) .. L_nmax^mu(x) in one recurrence sweep.
std::vector<double> laguerre_sequence(int nmax, double mu, double x);

/// Dunkl deformed exponential
///   E_nu(z) = Gamma(nu + 1/2) (2/|z|)^(nu - 1/2) [I_(nu-1/2)(|z|) + sgn(z) I_(nu+1/2)(|z|)]
/// on the real line, continued to complex z as the entire function
///   Gamma(nu + 1/2) [Itilde_(nu-1/2)(z) + (z/2) Itilde_(nu+1/2)(z)],
/// Itilde being bessel_i_regularized. E_0(z) = exp(z).
complex deformed_exponential(double nu, complex z, const SeriesControl& control = {});

/// exp(-|Re z|) * deformed_exponential(nu, z).
complex deformed_exponential_scaled(double nu, complex z, const SeriesControl& control = {});

/// Both sides of the Hille-Hardy bilinear generating formula
///   sum_n n! L_n^mu(x) L_n^mu(y) z^n / Gamma(n + mu + 1) * exp(-(x + y)/2)
///     = (xyz)^(-mu/2) / (1 - z) * exp[-(x + y)(1 + z) / (2(1 - z))] * I_mu(2 sqrt(xyz) / (1 - z)).
struct HilleHardyPair {
    complex lhs;           // sum truncated after nterms terms
    complex rhs;           // closed Bessel form
    double tail_estimate;  // relative size of the omitted tail
};

/// Throws ConvergenceError when the tail estimate exceeds control.rel_tol.
HilleHardyPair hille_hardy_pair(double x, double y, complex z, double mu, int nterms,
                                const SeriesControl& control = {});

/// Closed (right-hand) side of the Hille-Hardy formula alone, evaluated in log-scaled
/// form so that large x, y do not overflow. Requires x, y > 0, |z| < 1 or |z| = 1, z != 1.
complex hille_hardy_closed(double x, double y, complex z, double mu, const SeriesControl& control = {});

}  // namespace dunkl
