#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dunkl/errors.hpp"
#include "dunkl/special_functions.hpp"

using namespace dunkl;

namespace {

constexpr double pi = std::numbers::pi;

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

// Half-integer orders in closed form, valid for complex z off the cut. Evaluated in
// long double because the k = 3, 5 forms cancel heavily at small |z|.
complex i_half(int k, complex zd) {
    using cl = std::complex<long double>;
    const cl z(zd.real(), zd.imag());
    const cl pre = std::sqrt(2.0L / (std::numbers::pi_v<long double> * z));
    cl v = 0.0L;
    switch (k) {
        case -1: v = pre * std::cosh(z); break;
        case 1: v = pre * std::sinh(z); break;
        case 3: v = pre * (std::cosh(z) - std::sinh(z) / z); break;
        case 5: v = pre * ((1.0L + 3.0L / (z * z)) * std::sinh(z) - 3.0L * std::cosh(z) / z); break;
    }
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// std::cyl_bessel_i rejects negative orders; use I_(-a) = I_a + (2/pi) sin(a pi) K_a.
double std_bessel_i(double nu, double x) {
    if (nu >= 0.0) return std::cyl_bessel_i(nu, x);
    const double a = -nu;
    return std::cyl_bessel_i(a, x) + 2.0 / pi * std::sin(a * pi) * std::cyl_bessel_k(a, x);
}

// L_n^mu(x) = sum_k (-1)^k Gamma(n+mu+1) / (Gamma(n-k+1) Gamma(mu+k+1)) x^k / k!
double laguerre_explicit(int n, double mu, double x) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double binom = std::tgamma(n + mu + 1.0) / (std::tgamma(n - k + 1.0) * std::tgamma(mu + k + 1.0));
        sum += (k % 2 ? -1.0 : 1.0) * binom * std::pow(x, k) / std::tgamma(k + 1.0);
    }
    return sum;
}

}  // namespace

TEST_CASE("log_gamma examples and recurrence") {
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-13));
    CHECK(std::abs(log_gamma(1.0)) < 1e-14);
    CHECK(std::exp(log_gamma(2.5)) == doctest::Approx(1.3293403882).epsilon(1e-10));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);

    double worst = 0.0;
    for (double x = 0.1; x <= 50.0; x += 0.37)
        worst = std::max(worst, std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)));
    CHECK(worst < 1e-12);

    for (double x : {0.2, 0.7, 3.3, 17.5, 120.25}) CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
}

TEST_CASE("modified_bessel_i examples") {
    CHECK(std::abs(modified_bessel_i(0.0, 0.0) - 1.0) < 1e-15);
    CHECK(modified_bessel_i(0.5, 1.0).real() == doctest::Approx(0.9376748883).epsilon(1e-9));
    CHECK(modified_bessel_i(1.5, 1.0).real() == doctest::Approx(0.2935253263).epsilon(1e-9));
    CHECK(modified_bessel_i(0.5, 0.0) == complex{0.0, 0.0});
    CHECK_THROWS_AS(modified_bessel_i(-1.2, 1.0), DomainError);
}

TEST_CASE("half-integer Bessel orders match hyperbolic closed forms") {
    double worst = 0.0;
    for (int k : {-1, 1, 3, 5}) {
        for (double x = 0.1; x <= 20.0; x += 0.05) {
            worst = std::max(worst, rel(modified_bessel_i(0.5 * k, x), i_half(k, x)));
        }
    }
    CHECK(worst < 1e-11);

    // off the real axis, including the imaginary axis used by real-time kernels
    worst = 0.0;
    for (int k : {-1, 1, 3}) {
        for (double r = 0.5; r <= 40.0; r += 0.75) {
            for (double arg : {-1.5707963267948966, -1.2, -0.4, 0.3, 1.0, 1.5707963267948966}) {
                const complex z = std::polar(r, arg);
                // measured against the envelope |sqrt(2 / pi z)| e^|Re z|, since the oracle has zeros here
                const double envelope = std::sqrt(2.0 / (pi * r)) * std::exp(std::abs(z.real()));
                worst = std::max(worst, std::abs(modified_bessel_i(0.5 * k, z) - i_half(k, z)) / envelope);
            }
        }
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("modified_bessel_i agrees with the standard library on the real axis") {
    double worst = 0.0;
    for (double nu : {-0.75, -0.25, 0.0, 0.3, 1.0, 2.7, 6.0}) {
        for (double x = 0.2; x <= 45.0; x += 0.4) worst = std::max(worst, rel(modified_bessel_i(nu, x), std_bessel_i(nu, x)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("scaled and regularized Bessel variants are consistent") {
    for (double nu : {-0.4, 0.5, 2.0}) {
        for (complex z : {complex{3.0, 1.0}, complex{25.0, -4.0}, complex{-2.0, 0.5}}) {
            const complex full = modified_bessel_i(nu, z);
            CHECK(rel(modified_bessel_i_scaled(nu, z) * std::exp(std::abs(z.real())), full) < 1e-13);
            if (z.real() > 0.0) CHECK(rel(bessel_i_regularized(nu, z) * std::pow(0.5 * z, nu), full) < 1e-12);
        }
        // entire and even
        CHECK(rel(bessel_i_regularized(nu, complex{-3.0, 0.2}), bessel_i_regularized(nu, complex{3.0, -0.2})) < 1e-15);
    }
    // far beyond overflow of the unscaled value
    const complex big = modified_bessel_i_scaled(0.5, 1000.0);
    CHECK(big.real() == doctest::Approx(std::sqrt(2.0 / (pi * 1000.0)) * 0.5).epsilon(1e-12));
}

TEST_CASE("series control is validated and exhaustion is reported") {
    CHECK_THROWS_AS(modified_bessel_i(0.0, 1.0, SeriesControl{0.0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(modified_bessel_i(0.0, 1.0, SeriesControl{1e-13, 0}), std::invalid_argument);
    CHECK_THROWS_AS(modified_bessel_i(0.0, 12.0, SeriesControl{1e-13, 3}), ConvergenceError);
}

TEST_CASE("laguerre examples and explicit expansion") {
    CHECK(laguerre(0, 2.3, 7.0) == 1.0);
    CHECK(laguerre(1, 0.5, 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(laguerre(2, 0.5, 1.0) == doctest::Approx(-0.125).epsilon(1e-14));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_dist(-0.4, 3.0), x_dist(0.0, 10.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double mu = mu_dist(rng), x = x_dist(rng);
        for (int n = 0; n <= 8; ++n) {
            const double ref = laguerre_explicit(n, mu, x);
            worst = std::max(worst, std::abs(laguerre(n, mu, x) - ref) / std::max(1.0, std::abs(ref)));
        }
    }
    CHECK(worst < 1e-9);

    const auto seq = laguerre_sequence(5, 0.7, 1.9);
    REQUIRE(seq.size() == 6);
    for (int n = 0; n <= 5; ++n) CHECK(seq[n] == laguerre(n, 0.7, 1.9));
    CHECK_THROWS(laguerre(-1, 0.0, 1.0));
    CHECK_THROWS_AS(laguerre(2, -1.0, 1.0), DomainError);
}

TEST_CASE("deformed exponential") {
    for (double nu : {-0.3, 0.0, 0.5, 2.0}) CHECK(std::abs(deformed_exponential(nu, 1e-300) - 1.0) < 1e-14);
    CHECK(deformed_exponential(0.0, 1.0).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK(deformed_exponential(1.0, 1.0).real() == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));

    double worst = 0.0;
    for (double x = -5.0; x <= 5.0; x += 0.01) worst = std::max(worst, rel(deformed_exponential(0.0, x), std::exp(x)));
    CHECK(worst < 1e-11);

    // E_0 is the exponential on the imaginary axis too
    for (double t : {-30.0, -2.0, 0.5, 19.0}) CHECK(rel(deformed_exponential(0.0, complex{0.0, t}), std::exp(complex{0.0, t})) < 1e-12);

    // real-axis sgn form with the Bessel functions of |x|
    for (double nu : {0.25, 1.5}) {
        for (double x : {-3.0, -0.4, 0.8, 6.0}) {
            const double ax = std::abs(x);
            const double ref = std::tgamma(nu + 0.5) * std::pow(2.0 / ax, nu - 0.5) *
                               (std_bessel_i(nu - 0.5, ax) + (x > 0 ? 1.0 : -1.0) * std_bessel_i(nu + 0.5, ax));
            CHECK(rel(deformed_exponential(nu, x), ref) < 1e-12);
        }
    }
    CHECK_THROWS_AS(deformed_exponential(-0.5, 1.0), DomainError);
}

TEST_CASE("Hille-Hardy pair") {
    const auto near_zero = hille_hardy_pair(0.5, 0.5, 1e-15, 0.5, 2);
    const double limit = std::exp(-0.5) / std::tgamma(1.5);
    CHECK(std::abs(near_zero.lhs - limit) < 1e-13);
    CHECK(std::abs(near_zero.rhs - limit) < 1e-13);

    const auto a = hille_hardy_pair(0.5, 0.5, 0.3, 0.5, 60);
    CHECK(std::abs(a.lhs - a.rhs) < 1e-10);
    const auto b = hille_hardy_pair(1.0, 2.0, 0.5, 1.5, 80);
    CHECK(std::abs(b.lhs - b.rhs) < 1e-9);

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(0.05, 6.0), mu_dist(-0.4, 3.0), radius(0.0, 0.7), angle(-pi, pi);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const complex z = std::polar(radius(rng), angle(rng));
        const auto pair = hille_hardy_pair(pos(rng), pos(rng), z, mu_dist(rng), 200);
        worst = std::max(worst, std::abs(pair.lhs - pair.rhs) / std::abs(pair.rhs));
    }
    CHECK(worst < 1e-9);

    CHECK_THROWS_AS(hille_hardy_pair(1.0, 1.0, 0.9, 0.0, 5), ConvergenceError);
    CHECK_THROWS_AS(hille_hardy_pair(1.0, 1.0, 1.0, 0.0, 50), DomainError);
}
