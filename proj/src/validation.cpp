#include "dunkl/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "dunkl/dunkl_operators.hpp"
#include "dunkl/numerical_engine.hpp"
#include "dunkl/propagators.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/spectrum.hpp"

namespace dunkl {

namespace {

constexpr double kPi = std::numbers::pi;

DunklParams natural(double nu, double omega = 1.0) {
    DunklParams p;
    p.nu = nu;
    p.omega = omega;
    return p;
}

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

CheckResult at_most(double measured, double tol, std::string detail = {}) {
    return {{}, measured <= tol, measured, tol, false, std::move(detail)};
}

CheckResult at_least(double measured, double tol, std::string detail = {}) {
    return {{}, measured >= tol, measured, tol, true, std::move(detail)};
}

// ---- special functions

CheckResult bessel_half_integer() {
    using cl = std::complex<long double>;
    auto closed = [](int k, long double z) -> long double {
        const long double pre = std::sqrt(2.0L / (std::numbers::pi_v<long double> * z));
        switch (k) {
            case -1: return pre * std::cosh(z);
            case 1: return pre * std::sinh(z);
            case 3: return pre * (std::cosh(z) - std::sinh(z) / z);
            default: return pre * ((1.0L + 3.0L / (z * z)) * std::sinh(z) - 3.0L * std::cosh(z) / z);
        }
    };
    double worst = 0.0;
    for (int k : {-1, 1, 3, 5})
        for (int i = 0; i <= 398; ++i) {
            const double x = 0.1 + 0.05 * i;
            const long double ref = closed(k, x);
            const cl v(modified_bessel_i(0.5 * k, x).real(), 0.0L);
            worst = std::max(worst, static_cast<double>(std::abs(v.real() - ref) / std::abs(ref)));
        }
    return at_most(worst, 1e-11, "orders -1/2..5/2, x in [0.1, 20]");
}

CheckResult laguerre_expansion() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_dist(-0.4, 3.0), x_dist(0.0, 10.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double mu = mu_dist(rng), x = x_dist(rng);
        const auto seq = laguerre_sequence(8, mu, x);
        for (int n = 0; n <= 8; ++n) {
            double ref = 0.0;
            for (int k = 0; k <= n; ++k)
                ref += (k % 2 ? -1.0 : 1.0) * std::exp(log_gamma(n + mu + 1.0) - log_gamma(n - k + 1.0) -
                                                       log_gamma(mu + k + 1.0) - log_gamma(k + 1.0)) *
                       std::pow(x, k);
            worst = std::max(worst, std::abs(seq[n] - ref) / std::max(1.0, std::abs(ref)));
        }
    }
    return at_most(worst, 1e-9, "n <= 8, 200 random (mu, x)");
}

CheckResult deformed_exponential_nu0() {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = -5.0 + 0.01 * i;
        worst = std::max(worst, rel(deformed_exponential(0.0, x), std::exp(x)));
    }
    return at_most(worst, 1e-11, "E_0(x) = e^x on [-5, 5]");
}

CheckResult hille_hardy() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(0.05, 6.0), mu_dist(-0.4, 3.0), radius(0.0, 0.7), angle(-kPi, kPi);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const complex z = std::polar(radius(rng), angle(rng));
        const auto pair = hille_hardy_pair(pos(rng), pos(rng), z, mu_dist(rng), 200);
        worst = std::max(worst, std::abs(pair.lhs - pair.rhs) / std::abs(pair.rhs));
    }
    return at_most(worst, 1e-9, "100 random tuples, |z| <= 0.7");
}

CheckResult log_gamma_recurrence() {
    double worst = 0.0;
    for (double x = 0.1; x <= 50.0; x += 0.37)
        worst = std::max(worst, std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)));
    return at_most(worst, 1e-12);
}

// ---- Dunkl operators

double commutator_residual(const Grid& g, const DunklParams& p, const std::function<double(double)>& f) {
    const auto sf = SampledFunction::sample(g, f);
    const auto xf = SampledFunction::sample(g, [&](double x) { return x * f(x); });
    const auto d_f = dunkl_derivative(sf, p);
    const auto d_xf = dunkl_derivative(xf, p);
    const auto rf = reflect(sf);
    const complex i{0.0, 1.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const complex lhs = (p.hbar / i) * (g.node(k) * d_f.values[k] - d_xf.values[k]);
        const complex rhs = i * p.hbar * (sf.values[k] + 2.0 * p.nu * rf.values[k]);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

CheckResult commutator() {
    const std::vector<std::function<double(double)>> tests{
        [](double) { return 1.0; }, [](double x) { return x; }, [](double x) { return x * x; },
        [](double x) { return std::exp(-x * x); }, [](double x) { return x * std::exp(-x * x); }};
    double ratio = HUGE_VAL;
    for (double nu : {0.0, 0.35, 1.5}) {
        double coarse = 0.0, fine = 0.0;
        for (const auto& f : tests) {
            coarse = std::max(coarse, commutator_residual(Grid(4.0, 200), natural(nu), f));
            fine = std::max(fine, commutator_residual(Grid(4.0, 400), natural(nu), f));
        }
        ratio = std::min(ratio, coarse / fine);
    }
    return at_least(ratio, 3.5, "residual ratio when h is halved, worst over nu in {0, 0.35, 1.5}");
}

CheckResult derivative_of_constants() {
    double worst = 0.0;
    for (double nu : {-0.3, 0.0, 0.5, 2.0}) {
        const auto d = dunkl_derivative(SampledFunction::sample(Grid(1.0, 30), [](double) { return 4.2; }), natural(nu));
        for (const auto& v : d.values) worst = std::max(worst, std::abs(v));
    }
    return at_most(worst, 1e-12);
}

CheckResult parity_reconstruction() {
    const Grid g(2.0, 400);
    const auto f = SampledFunction::sample(g, [](double x) { return complex{std::exp(x), std::atan(3 * x + 1)}; });
    const auto e = parity_project(f, 1), o = parity_project(f, -1);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(e.values[i] + o.values[i] - f.values[i]) / std::abs(f.values[i]));
    return at_most(worst, 4e-16, "relative, one rounding");
}

CheckResult hamiltonian_symmetry() {
    double worst = 0.0;
    for (double nu : {-0.3, 0.25, 1.5})
        for (int s : {1, -1}) {
            const auto m = hamiltonian_matrix(ParityChannel(s, nu), natural(nu), HalfGrid(5.0, 100),
                                              harmonic_potential(natural(nu)));
            const auto dense = m.matrix.to_dense();
            const auto t = dense.transposed();
            for (std::size_t i = 0; i < dense.rows(); ++i)
                for (std::size_t j = 0; j < dense.cols(); ++j) worst = std::max(worst, std::abs(dense(i, j) - t(i, j)));
        }
    return at_most(worst, 0.0, "bitwise");
}

CheckResult inner_product_hermitian() {
    const Grid g(1.0, 1000);
    const auto f = SampledFunction::sample(g, [](double v) { return complex{std::cos(v), v * v}; });
    const auto k = SampledFunction::sample(g, [](double v) { return complex{1.0 + v, -std::exp(v)}; });
    const auto p = natural(0.4);
    const double asym = std::abs(weighted_inner_product(f, k, p) - std::conj(weighted_inner_product(k, f, p)));
    const complex ff = weighted_inner_product(f, f, p);
    const bool positive = ff.real() > 0.0 && ff.imag() == 0.0;
    auto r = at_most(asym, 1e-14, positive ? "<f,f> > 0" : "<f,f> not positive");
    r.passed = r.passed && positive;
    return r;
}

CheckResult channel_identity() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> nu_dist(-0.49, 5.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double nu = nu_dist(rng);
        for (int s : {1, -1}) {
            const ParityChannel c(s, nu);
            const double l = c.lambda();
            worst = std::max(worst, std::abs(l * l - 0.25 - c.singular_strength()) / std::max(1.0, l * l));
        }
    }
    return at_most(worst, 1e-14);
}

// ---- propagators

CheckResult parity_recombination() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> xs(-2.0, 2.0), taus(0.5, 2.0), nus(-0.45, 2.5);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double xa = xs(rng), xb = xs(rng), tau = taus(rng), nu = nus(rng);
        const auto T = ComplexTime::euclidean(tau);
        const auto p = natural(nu, 0.0);
        const complex sum = free_kernel_parity(xb, xa, T, ParityChannel::even(nu), p) +
                            (xa * xb > 0 ? 1.0 : -1.0) * free_kernel_parity(xb, xa, T, ParityChannel::odd(nu), p);
        worst = std::max(worst, rel(free_kernel(xb, xa, T, p), sum));
    }
    return at_most(worst, 1e-10, "200 Euclidean points, |x| <= 2, tau in [0.5, 2]");
}

CheckResult kernel_symmetry() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    double worst = 0.0;
    for (double nu : {-0.2, 0.5, 1.5})
        for (const auto& T : {ComplexTime::euclidean(0.6), ComplexTime::real_time(1.1), ComplexTime(complex{0.4, -0.9})})
            for (int k = 0; k < 10; ++k) {
                const double a = xs(rng), b = xs(rng);
                for (System sys : {System::free, System::harmonic})
                    worst = std::max(worst, rel(full_kernel(b, a, T, natural(nu), sys), full_kernel(a, b, T, natural(nu), sys)));
            }
    return at_most(worst, 1e-13);
}

CheckResult chapman_kolmogorov() {
    const auto p = natural(0.5, 0.0);
    const Grid g(10.0, 8000);
    const auto half_t = ComplexTime::euclidean(0.5);
    double worst = 0.0;
    for (auto [xb, xa] : {std::pair{0.7, 0.3}, std::pair{-1.2, 0.5}, std::pair{2.0, -1.5}}) {
        const auto integrand = SampledFunction::sample(g, [&](double x) {
            return free_kernel(xb, x, half_t, p) * free_kernel(x, xa, half_t, p);
        });
        worst = std::max(worst, rel(weighted_integral(integrand, p), free_kernel(xb, xa, ComplexTime::euclidean(1.0), p)));
    }
    return at_most(worst, 1e-6, "free kernel, nu = 1/2, tau = 0.5 + 0.5, L = 10, M = 8000");
}

CheckResult delta_family() {
    const auto p = natural(0.5, 0.0);
    const Grid fine(6.0, 2400);
    auto f = [](double x) { return (1.0 + x) * std::exp(-x * x); };
    const double xb = 0.7;
    std::vector<std::pair<double, double>> errors;
    for (double tau : {0.02, 0.01, 0.005}) {
        const auto T = ComplexTime::euclidean(tau);
        const auto s = SampledFunction::sample(fine, [&](double x) { return free_kernel(xb, x, T, p) * f(x); });
        errors.emplace_back(tau, std::abs(weighted_integral(s, p) - f(xb)));
    }
    return at_least(convergence_order(errors), 0.8, "fitted order in tau of |int K f - f(xb)|");
}

CheckResult nu_zero_continuity() {
    const auto T = ComplexTime::euclidean(0.9);
    double worst = 0.0;
    for (System sys : {System::free, System::harmonic})
        for (auto [xb, xa] : {std::pair{0.3, 1.4}, std::pair{-2.0, 0.5}}) {
            const double sh = std::sinh(0.9), ch = std::cosh(0.9);
            const double ref = sys == System::free
                                   ? std::exp(-(xb - xa) * (xb - xa) / 1.8) / std::sqrt(1.8 * kPi)
                                   : std::exp(-((xa * xa + xb * xb) * ch - 2.0 * xa * xb) / (2.0 * sh)) / std::sqrt(2.0 * kPi * sh);
            worst = std::max(worst, rel(full_kernel(xb, xa, T, natural(1e-6, sys == System::free ? 0.0 : 1.0), sys), ref));
        }
    return at_most(worst, 1e-5, "nu = 1e-6 against the nu = 0 heat and Mehler kernels");
}

CheckResult spectral_sum() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xs(-2.5, 2.5);
    double worst = 0.0;
    for (double tau : {0.3, 0.7, 1.5}) {
        const auto T = ComplexTime::euclidean(tau);
        for (int k = 0; k < 10; ++k) {
            const double xa = xs(rng), xb = xs(rng);
            const auto s = ho_spectral_kernel(xb, xa, T, natural(0.5), 120);
            worst = std::max(worst, rel(s.value, full_kernel(xb, xa, T, natural(0.5), System::harmonic)));
        }
    }
    return at_most(worst, 1e-8, "nu = 1/2, nmax = 120, tau in {0.3, 0.7, 1.5}");
}

// ---- spectrum

CheckResult eigenfunction_residual() {
    const double d = 1e-3;
    double worst = 0.0;
    for (double nu : {0.25, 1.5})
        for (int s : {1, -1}) {
            const ParityChannel c(s, nu);
            const auto p = natural(nu);
            for (int n = 0; n <= 5; ++n) {
                auto psi = [&](double x) { return wavefunction(n, c, p, x); };
                for (double x = 0.1; x <= 6.0; x += 0.05) {
                    const double f = psi(x);
                    const double f1 = (-psi(x + 2 * d) + 8 * psi(x + d) - 8 * psi(x - d) + psi(x - 2 * d)) / (12 * d);
                    const double f2 = (-psi(x + 2 * d) + 16 * psi(x + d) - 30 * f + 16 * psi(x - d) - psi(x - 2 * d)) / (12 * d * d);
                    const double h = -0.5 * (f2 + 2 * nu * f1 / x - nu * (1 - s) * f / (x * x)) + 0.5 * x * x * f;
                    worst = std::max(worst, std::abs(h - energy(n, c, p) * f));
                }
            }
        }
    return at_most(worst, 1e-6, "x in [0.1, 6], n <= 5");
}

CheckResult interleaving() {
    double worst = 0.0;
    bool ordered = true;
    for (double nu : {-0.3, 0.0, 0.25, 0.5, 1.5}) {
        const auto lines = spectral_lines(8, natural(nu));
        for (std::size_t k = 0; k + 1 < lines.size(); ++k) {
            ordered = ordered && lines[k + 1].energy > lines[k].energy;
            worst = std::max(worst, std::abs(lines[k + 1].energy - lines[k].energy - 1.0));
        }
    }
    auto r = at_most(worst, 1e-12, ordered ? "gap - hbar omega" : "union not strictly increasing");
    r.passed = r.passed && ordered;
    return r;
}

CheckResult hermite_reduction() {
    const Grid g(12.0, 4000);
    const auto p = natural(0.0);
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n)
        for (int s : {1, -1}) {
            const int k = 2 * n + (s == 1 ? 0 : 1);
            const auto a = SampledFunction::sample(g, [&](double x) { return wavefunction(n, ParityChannel(s, 0.0), p, x); });
            const auto b = SampledFunction::sample(g, [&](double x) {
                double prev = 0.0, cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
                for (int j = 0; j < k; ++j) {
                    const double next = std::sqrt(2.0 / (j + 1)) * x * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
                    prev = cur;
                    cur = next;
                }
                return cur;
            });
            worst = std::max(worst, std::abs(std::abs(weighted_inner_product(a, b, p)) - 1.0));
        }
    return at_most(worst, 1e-8, "|<Psi, phi_k>| - 1, k <= 13");
}

CheckResult gram_orthonormality() {
    const Grid g(14.0, 1 << 16);
    double worst = 0.0;
    for (double nu : {0.5, 1.5})
        for (int s : {1, -1}) worst = std::max(worst, gram_matrix(10, ParityChannel(s, nu), natural(nu), g).max_deviation);
    return at_most(worst, 1e-8, "n <= 10, nu in {0.5, 1.5}, L = 14, M = 65536");
}

// ---- numerical engine

CheckResult semigroup() {
    const HalfGrid half(6.0, 60);
    const auto ch = ParityChannel::odd(0.5);
    const auto p = natural(0.5);
    const auto v = harmonic_potential(p);
    const auto once = time_sliced_kernel(ch, p, SliceScheme{7, 0.5}, half, v);
    const auto twice = compose(once, once, half);
    const auto direct = time_sliced_kernel(ch, p, SliceScheme{15, 1.0}, half, v);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < half.size(); ++i)
        for (std::size_t j = 0; j < half.size(); ++j) {
            worst = std::max(worst, std::abs(twice.values(i, j) - direct.values(i, j)));
            scale = std::max(scale, std::abs(direct.values(i, j)));
        }
    return at_most(worst / scale, 1e-12, "(tau, N) twice vs (2 tau, 2N + 1)");
}

CheckResult eigen_decomposition() {
    const auto p = natural(0.25);
    const auto ham = hamiltonian_matrix(ParityChannel::odd(0.25), p, HalfGrid(8.0, 150), harmonic_potential(p));
    const auto dense = ham.matrix.to_dense();
    const auto eig = diagonalize(dense);
    const std::size_t n = dense.rows();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(dense(i, j)));
    double orth = 0.0, residual = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += eig.eigenvectors(i, a) * eig.eigenvectors(i, b);
            orth = std::max(orth, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            double hv = 0.0;
            for (std::size_t j = 0; j < n; ++j) hv += dense(i, j) * eig.eigenvectors(j, a);
            residual = std::max(residual, std::abs(hv - eig.eigenvalues[a] * eig.eigenvectors(i, a)) / norm);
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "max |V^T V - I|; residual/|H| = %.2e", residual);
    auto r = at_most(orth, 1e-10, detail);
    r.passed = r.passed && residual <= 1e-9;
    return r;
}

CheckResult spectrum_match() {
    double worst = 0.0;
    for (double nu : {0.0, 0.25, 0.5, 1.5})
        for (int s : {1, -1}) {
            const ParityChannel ch(s, nu);
            const auto p = natural(nu);
            const auto gs = grid_spectrum(ch, p, 12.0, 2000, 8, harmonic_potential(p));
            for (int n = 0; n < 8; ++n) worst = std::max(worst, std::abs(gs.extrapolated[n] - energy(n, ch, p)));
        }
    return at_most(worst, 1e-4, "first 8 levels per channel, L = 12, M = 2000");
}

struct GroundStateRun {
    double energy_error = 0.0;
    double method_gap = 0.0;
    double fidelity = 1.0;
};

const GroundStateRun& ground_state_run() {
    static const GroundStateRun run = [] {
        GroundStateRun out;
        for (double nu : {0.5, 0.0}) {
            const auto p = natural(nu);
            const auto ch = ParityChannel::even(nu);
            const HalfGrid half(12.0, 2000);
            const auto v = harmonic_potential(p);
            const auto gs = ground_state_imaginary_time(ch, p, half, v, 0.05, 400);
            out.energy_error = std::max(out.energy_error, std::abs(gs.energy - energy(0, ch, p)));
            const auto ham = hamiltonian_matrix(ch, p, half, v);
            out.method_gap = std::max(out.method_gap, std::abs(gs.energy - tridiagonal_eigenvalues(ham.matrix).front()));
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t j = 0; j < half.size(); ++j) {
                const double exact = std::pow(half.node(j), nu) * wavefunction(0, ch, p, half.node(j));
                dot += exact * gs.profile[j];
                na += exact * exact;
                nb += gs.profile[j] * gs.profile[j];
            }
            out.fidelity = std::min(out.fidelity, dot * dot / (na * nb));
        }
        return out;
    }();
    return run;
}

CheckResult ground_state_agreement() {
    return at_most(ground_state_run().method_gap, 1e-4, "imaginary time vs lowest eigenvalue, nu in {0.5, 0}");
}

CheckResult ground_state_energy() {
    return at_most(ground_state_run().energy_error, 1e-3, "even channel, nu in {0.5, 0}");
}

CheckResult ground_state_fidelity() {
    return at_least(ground_state_run().fidelity, 0.9999, "|<psi_exact, psi>|^2");
}

CheckResult time_slicing_convergence() {
    const auto ch = ParityChannel::odd(0.5);
    const auto p = natural(0.5);
    const HalfGrid half(12.0, 1200);
    const std::size_t mid = 600;
    const std::vector<std::size_t> src{mid};
    const double y = half.node(mid);
    const double exact = 2.0 * y * free_kernel_parity(y, y, ComplexTime::euclidean(1.0), ch, p).real();
    std::vector<std::pair<double, double>> series;
    for (int n : {16, 32, 64}) {
        const auto cols = time_sliced_columns(ch, p, SliceScheme{n, 1.0}, half, zero_potential(), src);
        series.emplace_back(n, std::abs(cols(mid, 0) - exact) / exact);
    }
    auto r = at_most(convergence_order(series), -0.8, "odd channel nu = 1/2, V = 0, N in {16, 32, 64}");
    return r;
}

struct Entry {
    const char* name;
    CheckResult (*run)();
};

constexpr Entry kChecks[] = {
    {"bessel-half-integer", bessel_half_integer},
    {"laguerre-expansion", laguerre_expansion},
    {"deformed-exponential", deformed_exponential_nu0},
    {"hille-hardy", hille_hardy},
    {"log-gamma-recurrence", log_gamma_recurrence},
    {"commutator", commutator},
    {"derivative-of-constants", derivative_of_constants},
    {"parity-reconstruction", parity_reconstruction},
    {"hamiltonian-symmetry", hamiltonian_symmetry},
    {"inner-product-hermitian", inner_product_hermitian},
    {"channel-identity", channel_identity},
    {"parity-recombination", parity_recombination},
    {"kernel-symmetry", kernel_symmetry},
    {"chapman-kolmogorov", chapman_kolmogorov},
    {"delta-family", delta_family},
    {"nu-zero-continuity", nu_zero_continuity},
    {"spectral-sum", spectral_sum},
    {"eigenfunction-residual", eigenfunction_residual},
    {"interleaving", interleaving},
    {"hermite-reduction", hermite_reduction},
    {"gram-orthonormality", gram_orthonormality},
    {"semigroup", semigroup},
    {"eigen-decomposition", eigen_decomposition},
    {"spectrum-match", spectrum_match},
    {"ground-state-agreement", ground_state_agreement},
    {"ground-state-energy", ground_state_energy},
    {"ground-state-fidelity", ground_state_fidelity},
    {"time-slicing-convergence", time_slicing_convergence},
};

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& e : kChecks) names.emplace_back(e.name);
    return names;
}

std::vector<CheckResult> run_checks(std::span<const std::string> only) {
    const auto names = check_names();
    for (const auto& n : only)
        if (std::find(names.begin(), names.end(), n) == names.end())
            throw std::invalid_argument("unknown check '" + n + "'");

    std::vector<CheckResult> results;
    for (const auto& e : kChecks) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.name) == only.end()) continue;
        CheckResult r;
        try {
            r = e.run();
        } catch (const std::exception& ex) {
            r = CheckResult{{}, false, std::nan(""), 0.0, false, std::string("threw: ") + ex.what()};
        }
        r.name = e.name;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace dunkl
