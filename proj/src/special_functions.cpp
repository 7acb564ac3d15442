#include "dunkl/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dunkl/errors.hpp"
#include "internal.hpp"

namespace dunkl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Beyond kAsymptoticSwitch the asymptotic expansion is used outright. Between
// kNearAxisSwitch and kAsymptoticSwitch the power series loses about
// exp(|z| - Re z) to cancellation, so near the imaginary axis the expansion
// is preferred whenever its truncation error is smaller.
constexpr double kAsymptoticSwitch = 17.0;
constexpr double kNearAxisSwitch = 12.0;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

void require_order(double order) {
    if (!(order > -1.0) || !std::isfinite(order))
        throw DomainError("modified Bessel order must exceed -1, got " + std::to_string(order));
}

// sum_k (z^2/4)^k / (k! Gamma(order + k + 1))
complex regularized_series(double order, complex z, const SeriesControl& control) {
    const complex q = 0.25 * z * z;
    complex term = std::exp(-log_gamma(order + 1.0));
    complex sum = term;
    double largest = std::abs(term);
    const double peak = 0.5 * std::abs(z);
    for (int k = 1; k <= control.max_terms; ++k) {
        term *= q / (static_cast<double>(k) * (order + k));
        sum += term;
        const double t = std::abs(term);
        largest = std::max(largest, t);
        if (k > peak && (t <= control.rel_tol * std::abs(sum) || t <= kEps * kEps * largest))
            return sum;
    }
    throw ConvergenceError("Bessel series did not converge within " +
                           std::to_string(control.max_terms) + " terms");
}

struct Asymptotic {
    complex value;
    double error;  // relative size of the smallest omitted term
};

// exp(-Re z) I_order(z) for Re z >= 0 and large |z|, truncated at the smallest term.
Asymptotic asymptotic_scaled(double order, complex z, int max_terms) {
    const double mu4 = 4.0 * order * order;
    complex alternating = 1.0;
    complex plain = 1.0;
    complex term = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    double smallest = 1.0;
    for (int k = 1; k <= max_terms; ++k) {
        const double odd = 2.0 * k - 1.0;
        const complex next = term * (mu4 - odd * odd) / (8.0 * k * z);
        const double t = std::abs(next);
        if (t > previous) break;
        term = next;
        previous = t;
        smallest = t;
        alternating += (k % 2 == 1) ? -term : term;
        plain += term;
        if (t <= 0.5 * kEps * std::abs(alternating)) break;
    }

    const complex prefactor = 1.0 / std::sqrt(2.0 * kPi * z);
    const complex i{0.0, 1.0};
    complex result = std::exp(i * z.imag()) * prefactor * alternating;
    // exponentially small companion; the positive real axis is a Stokes line, where
    // the two one-sided multipliers exp(+-i pi (order + 1/2)) are averaged
    const complex multiplier = z.imag() == 0.0 ? complex{std::cos(kPi * (order + 0.5)), 0.0}
                                               : std::exp((z.imag() > 0.0 ? 1.0 : -1.0) * i * kPi * (order + 0.5));
    result += std::exp(-2.0 * z.real() - i * z.imag()) * multiplier * prefactor * plain;
    return {result, smallest / std::abs(alternating)};
}

// 1 - exp(u), accurate for small |u|.
complex one_minus_exp(complex u) {
    const double em1 = std::expm1(u.real());
    const double s = std::sin(0.5 * u.imag());
    const double cos_minus_one = -2.0 * s * s;
    const double e = std::exp(u.real());
    return -complex{em1 * std::cos(u.imag()) + cos_minus_one, e * std::sin(u.imag())};
}

}  // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("SeriesControl.rel_tol must be positive");
    if (max_terms < 1) throw std::invalid_argument("SeriesControl.max_terms must be at least 1");
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
    if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    x -= 1.0;
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
    const double t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

double gamma_function(double x) { return std::exp(log_gamma(x)); }

complex bessel_i_regularized_scaled(double order, complex z, const SeriesControl& control) {
    require_order(order);
    control.validate();
    if (z.real() < 0.0) z = -z;  // even in z
    const double r = std::abs(z);
    if (r > kNearAxisSwitch) {
        const auto a = asymptotic_scaled(order, z, control.max_terms);
        const double series_loss = kEps * std::exp(r - z.real());
        if (r > kAsymptoticSwitch || a.error < series_loss) {
            if (a.error > std::max(control.rel_tol, 8.0 * kEps) && r > kAsymptoticSwitch)
                throw ConvergenceError("Bessel asymptotic expansion cannot reach the requested tolerance");
            return std::pow(0.5 * z, -order) * a.value;
        }
    }
    return regularized_series(order, z, control) * std::exp(-z.real());
}

complex bessel_i_regularized(double order, complex z, const SeriesControl& control) {
    return bessel_i_regularized_scaled(order, z, control) * std::exp(std::abs(z.real()));
}

complex modified_bessel_i_scaled(double order, complex z, const SeriesControl& control) {
    require_order(order);
    if (z == complex{0.0, 0.0}) {
        if (order == 0.0) return 1.0;
        if (order > 0.0) return 0.0;
        throw DomainError("I_order(0) is singular for negative order");
    }
    return std::pow(0.5 * z, order) * bessel_i_regularized_scaled(order, z, control);
}

complex modified_bessel_i(double order, complex z, const SeriesControl& control) {
    return modified_bessel_i_scaled(order, z, control) * std::exp(std::abs(z.real()));
}

std::vector<double> laguerre_sequence(int nmax, double mu, double x) {
    if (nmax < 0) throw std::invalid_argument("laguerre degree must be non-negative");
    if (!(mu > -1.0)) throw DomainError("laguerre parameter mu must exceed -1");
    std::vector<double> values(static_cast<std::size_t>(nmax) + 1);
    values[0] = 1.0;
    if (nmax >= 1) values[1] = 1.0 + mu - x;
    for (int k = 1; k < nmax; ++k) {
        values[k + 1] = ((2.0 * k + 1.0 + mu - x) * values[k] - (k + mu) * values[k - 1]) / (k + 1.0);
    }
    return values;
}

double laguerre(int n, double mu, double x) { return laguerre_sequence(n, mu, x).back(); }

namespace {

// exp(z) 1F1(nu; 2nu+1; -2z) scaled by exp(Re z); for Re z < 0 every term has
// the phase of (-2z)^k, so there is no cancellation close to the negative axis.
complex deformed_exponential_kummer(double nu, complex z, const SeriesControl& control) {
    const complex x = -2.0 * z;
    complex term = 1.0;
    complex sum = 1.0;
    for (int k = 1; k <= control.max_terms; ++k) {
        term *= (nu + k - 1.0) / ((2.0 * nu + k) * k) * x;
        sum += term;
        if (k > std::abs(x) && std::abs(term) <= 0.5 * kEps * std::abs(sum)) {
            return std::exp(z + z.real()) * sum;
        }
    }
    throw ConvergenceError("deformed exponential series did not converge within " +
                           std::to_string(control.max_terms) + " terms");
}

// Large-|z| expansion of the same confluent function, Re z < 0, scaled by exp(Re z).
Asymptotic deformed_exponential_asymptotic(double nu, complex z, int max_terms) {
    const complex x = -2.0 * z;
    const double g = std::exp(log_gamma(2.0 * nu + 1.0) - log_gamma(nu + 1.0));
    complex recessive = 1.0, dominant = 1.0;  // from e^z and e^-z respectively
    complex tr = 1.0, td = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    double smallest = 0.0;
    for (int k = 0; k < max_terms; ++k) {
        const complex nd = td * ((nu + 1.0 + k) * (1.0 - nu + k) / (k + 1.0)) / x;
        const complex nr = tr * ((nu + k) * (-nu + k) / (k + 1.0)) / (-x);
        const double t = std::max(std::abs(nd), std::abs(nr));
        smallest = t;
        if (t > previous) break;
        previous = t;
        td = nd;
        tr = nr;
        dominant += td;
        recessive += tr;
        if (t <= 0.5 * kEps) break;
    }
    const complex i{0.0, 1.0};
    const complex phase = x.imag() == 0.0 ? complex{std::cos(kPi * nu), 0.0}
                                           : std::exp((x.imag() > 0.0 ? 1.0 : -1.0) * i * kPi * nu);
    const complex value = nu * g * std::exp(-i * z.imag()) * std::pow(x, -nu - 1.0) * dominant +
                          g * std::exp(2.0 * z.real() + i * z.imag()) * phase * std::pow(x, -nu) * recessive;
    return {value, smallest};
}

}  // namespace

complex deformed_exponential_scaled(double nu, complex z, const SeriesControl& control) {
    if (!(nu > -0.5)) throw DomainError("deformed exponential requires nu > -1/2");
    control.validate();
    const double re = z.real();
    const double r = std::abs(z);
    if (re < 0.0) {
        // Bessel form loses exp(2|Re z|), the Kummer series exp(2(|z| - |Re z|)).
        const double loss = kEps * std::exp(2.0 * std::min(-re, r + re));
        if (r > kNearAxisSwitch) {
            const auto a = deformed_exponential_asymptotic(nu, z, control.max_terms);
            if (a.error < loss) return a.value;
        }
        if (-re > r + re) return deformed_exponential_kummer(nu, z, control);
    }
    const double g = gamma_function(nu + 0.5);
    return g * (bessel_i_regularized_scaled(nu - 0.5, z, control) +
                0.5 * z * bessel_i_regularized_scaled(nu + 0.5, z, control));
}

complex deformed_exponential(double nu, complex z, const SeriesControl& control) {
    return deformed_exponential_scaled(nu, z, control) * std::exp(std::abs(z.real()));
}

namespace detail {

// Closed Hille-Hardy side with 1 - z supplied by the caller (it may know a more
// accurate value than the direct subtraction, e.g. near z = 1).
complex hille_hardy_closed(double x, double y, complex z, complex one_minus_z, double mu,
                           const SeriesControl& control) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("Hille-Hardy arguments x, y must be positive");
    if (!(mu > -1.0)) throw DomainError("Hille-Hardy parameter mu must exceed -1");
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("Hille-Hardy formula requires |z| <= 1");
    if (std::abs(one_minus_z) < 1e-14) throw NumericalError("Hille-Hardy closed form singular at z = 1");
    // (xyz)^(-mu/2) I_mu(w) / (1 - z) = (1 - z)^(-mu-1) Itilde_mu(w), w = 2 sqrt(xyz) / (1 - z)
    const complex w = 2.0 * std::sqrt(x * y * z) / one_minus_z;
    const complex exponent = -(mu + 1.0) * std::log(one_minus_z) -
                             0.5 * (x + y) * (1.0 + z) / one_minus_z + std::abs(w.real());
    return std::exp(exponent) * bessel_i_regularized_scaled(mu, w, control);
}

complex one_minus_exp(complex u) { return dunkl::one_minus_exp(u); }

}  // namespace detail

complex hille_hardy_closed(double x, double y, complex z, double mu, const SeriesControl& control) {
    return detail::hille_hardy_closed(x, y, z, 1.0 - z, mu, control);
}

HilleHardyPair hille_hardy_pair(double x, double y, complex z, double mu, int nterms,
                                const SeriesControl& control) {
    control.validate();
    if (nterms < 1) throw std::invalid_argument("hille_hardy_pair needs at least one term");
    if (!(std::abs(z) < 1.0)) throw DomainError("Hille-Hardy series requires |z| < 1");
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("Hille-Hardy arguments x, y must be positive");

    const auto lx = laguerre_sequence(nterms - 1, mu, x);
    const auto ly = laguerre_sequence(nterms - 1, mu, y);
    double coefficient = std::exp(-log_gamma(mu + 1.0));  // n! / Gamma(n + mu + 1)
    complex zn = 1.0;
    complex sum = 0.0;
    double last = 0.0;
    double before_last = 0.0;
    for (int n = 0; n < nterms; ++n) {
        if (n > 0) {
            coefficient *= n / (n + mu);
            zn *= z;
        }
        const complex term = coefficient * lx[n] * ly[n] * zn;
        sum += term;
        before_last = last;
        last = std::abs(term);
    }
    const double damping = std::exp(-0.5 * (x + y));
    HilleHardyPair out;
    out.lhs = sum * damping;
    out.rhs = hille_hardy_closed(x, y, z, mu, control);
    const double r = std::abs(z);
    const double tail = std::max(last, before_last) * damping * r / (1.0 - r);
    const double scale = std::abs(out.lhs);
    out.tail_estimate = scale > 0.0 ? tail / scale : (tail > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (out.tail_estimate > control.rel_tol)
        throw ConvergenceError("Hille-Hardy series tail " + std::to_string(out.tail_estimate) +
                               " exceeds tolerance at " + std::to_string(nterms) + " terms");
    return out;
}

}  // namespace dunkl
