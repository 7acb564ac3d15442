#include <doctest.h>

#include <cmath>
#include <random>

#include "dunkl/dunkl_operators.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/numerical_engine.hpp"

using namespace dunkl;

namespace {

DunklParams with_nu(double nu) {
    DunklParams p;
    p.nu = nu;
    return p;
}

double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

// max_x |[x, (hbar/i) D] f - i hbar (1 + 2 nu R) f| over the grid
double commutator_residual(const Grid& g, const DunklParams& p, double (*f)(double)) {
    const complex i_hbar{0.0, p.hbar};
    const auto sf = SampledFunction::sample(g, f);
    const auto xf = SampledFunction::sample(g, [f](double x) { return x * f(x); });
    const auto d_f = dunkl_derivative(sf, p);
    const auto d_xf = dunkl_derivative(xf, p);
    const auto rf = reflect(sf);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const complex lhs = (p.hbar / complex{0.0, 1.0}) * (g.node(i) * d_f.values[i] - d_xf.values[i]);
        const complex rhs = i_hbar * (sf.values[i] + 2.0 * p.nu * rf.values[i]);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace

TEST_CASE("grid layout") {
    const Grid g(2.0, 4);
    CHECK(g.size() == 8);
    CHECK(g.spacing() == 0.5);
    CHECK(g.node(0) == -1.75);
    CHECK(g.node(3) == -0.25);
    CHECK(g.node(4) == 0.25);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.node(g.reflected(i)) == -g.node(i));
    const HalfGrid h = g.half();
    CHECK(h.size() == 4);
    CHECK(h.node(0) == 0.25);
    CHECK(h.full() == g);
    CHECK_THROWS(Grid(0.0, 4));
    CHECK_THROWS(Grid(1.0, 1));
    CHECK_THROWS(SampledFunction(g, std::vector<complex>(3)));
}

TEST_CASE("parameters and channels") {
    CHECK_THROWS(with_nu(-0.5).validate());
    DunklParams bad;
    bad.mass = 0.0;
    CHECK_THROWS(bad.validate());
    CHECK_THROWS(ParityChannel(0, 0.1));

    const auto even = ParityChannel::even(0.7);
    const auto odd = ParityChannel::odd(0.7);
    CHECK(even.lambda() == doctest::Approx(0.2));   // alpha = nu - 1/2
    CHECK(odd.lambda() == doctest::Approx(1.2));    // beta = nu + 1/2

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
    CHECK(worst < 1e-14);
}

TEST_CASE("reflect") {
    const Grid g(3.0, 50);
    const auto cube = SampledFunction::sample(g, [](double x) { return x * x * x; });
    const auto square = SampledFunction::sample(g, [](double x) { return x * x; });
    const auto r = reflect(cube);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.values[i] == -cube.values[i]);
    CHECK(reflect(square).values == square.values);
    const auto f = SampledFunction::sample(g, [](double x) { return complex{std::exp(x), std::sin(3 * x)}; });
    CHECK(reflect(reflect(f)).values == f.values);
}

TEST_CASE("dunkl derivative examples") {
    for (int m : {100, 200}) {
        const Grid g(2.0, m);
        const double h2 = g.spacing() * g.spacing();

        const auto d_sq = dunkl_derivative(SampledFunction::sample(g, [](double x) { return x * x; }), with_nu(0.8));
        const auto d_lin = dunkl_derivative(SampledFunction::sample(g, [](double x) { return x; }), with_nu(0.3));
        const auto d_cube = dunkl_derivative(SampledFunction::sample(g, [](double x) { return x * x * x; }), with_nu(0.5));
        double e_sq = 0.0, e_lin = 0.0, e_cube = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.node(i);
            e_sq = std::max(e_sq, std::abs(d_sq.values[i] - 2.0 * x));
            e_lin = std::max(e_lin, std::abs(d_lin.values[i] - 1.6));
            e_cube = std::max(e_cube, std::abs(d_cube.values[i] - 4.0 * x * x));
        }
        CHECK(e_sq < 1e-12);   // the stencils are exact on quadratics
        CHECK(e_lin < 1e-12);
        CHECK(e_cube <= 1.01 * 2.0 * h2);  // one-sided end stencil: h^2 f''' / 3
    }

    for (double nu : {-0.3, 0.0, 0.5, 2.0}) {
        const auto d = dunkl_derivative(SampledFunction::sample(Grid(1.0, 30), [](double) { return 4.2; }), with_nu(nu));
        for (const auto& v : d.values) CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("commutator identity holds to second order") {
    using Fn = double (*)(double);
    const Fn tests[] = {[](double) { return 1.0; }, [](double x) { return x; }, [](double x) { return x * x; },
                        [](double x) { return std::exp(-x * x); }, [](double x) { return x * std::exp(-x * x); }};
    for (double nu : {0.0, 0.35, 1.5}) {
        double coarse = 0.0, fine = 0.0;
        for (Fn f : tests) {
            coarse = std::max(coarse, commutator_residual(Grid(4.0, 200), with_nu(nu), f));
            fine = std::max(fine, commutator_residual(Grid(4.0, 400), with_nu(nu), f));
        }
        CHECK(coarse < 1e-2);
        CHECK(coarse / fine >= 3.5);
    }
}

TEST_CASE("weighted inner product") {
    const Grid g(1.0, 1000);
    const auto one = SampledFunction::sample(g, [](double) { return 1.0; });
    const auto x = SampledFunction::sample(g, [](double v) { return v; });
    CHECK(weighted_inner_product(one, one, with_nu(0.5)).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weighted_inner_product(one, one, with_nu(0.0)).real() == doctest::Approx(2.0).epsilon(1e-12));
    for (double nu : {0.0, 0.25, 1.3}) CHECK(std::abs(weighted_inner_product(x, one, with_nu(nu))) < 1e-14);

    const auto f = SampledFunction::sample(g, [](double v) { return complex{std::cos(v), v * v}; });
    const auto k = SampledFunction::sample(g, [](double v) { return complex{1.0 + v, -std::exp(v)}; });
    const auto p = with_nu(0.4);
    CHECK(std::abs(weighted_inner_product(f, k, p) - std::conj(weighted_inner_product(k, f, p))) < 1e-14);
    const complex ff = weighted_inner_product(f, f, p);
    CHECK(ff.real() > 0.0);
    CHECK(ff.imag() == 0.0);
    CHECK_THROWS(weighted_inner_product(f, SampledFunction::sample(Grid(1.0, 999), [](double) { return 1.0; }), p));
}

TEST_CASE("parity projection") {
    const Grid g(2.0, 40);
    const auto f = SampledFunction::sample(g, [](double x) { return 1.0 + x; });
    const auto even = parity_project(f, 1);
    const auto odd = parity_project(f, -1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(even.values[i] - 1.0) < 1e-15);
        CHECK(std::abs(odd.values[i] - g.node(i)) < 1e-15);
    }
    const auto wild = SampledFunction::sample(g, [](double x) { return complex{std::exp(x), std::atan(3 * x + 1)}; });
    for (int s : {1, -1}) {
        const auto p = parity_project(wild, s);
        CHECK(max_abs_diff(parity_project(p, s), p) == 0.0);
        const auto r = reflect(p);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.values[i] == static_cast<double>(s) * p.values[i]);
    }
    const auto e = parity_project(wild, 1), o = parity_project(wild, -1);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(e.values[i] + o.values[i] - wild.values[i]) <= 4e-16 * std::abs(wild.values[i]));
    CHECK_THROWS(parity_project(wild, 2));
}

TEST_CASE("effective potential") {
    const auto v0 = zero_potential();
    CHECK(effective_potential(1.0, ParityChannel::even(0.5), with_nu(0.5), v0) == doctest::Approx(-0.125));
    CHECK(effective_potential(1.0, ParityChannel::odd(0.5), with_nu(0.5), v0) == doctest::Approx(0.375));
    const auto vh = harmonic_potential(with_nu(0.0));
    for (double y : {0.1, 1.0, 7.5}) CHECK(effective_potential(y, ParityChannel::even(0.0), with_nu(0.0), vh) == vh(y));
    CHECK_THROWS_AS(effective_potential(0.0, ParityChannel::even(0.0), with_nu(0.0), v0), DomainError);
    CHECK_THROWS_AS(effective_potential(-1.0, ParityChannel::even(0.0), with_nu(0.0), v0), DomainError);
}

TEST_CASE("hamiltonian matrix") {
    DunklParams p = with_nu(0.0);
    p.hbar = 1.3;
    p.mass = 0.7;
    const HalfGrid half(5.0, 100);
    const double h = half.spacing();
    const auto ham = hamiltonian_matrix(ParityChannel::even(0.0), p, half, zero_potential());
    const double kinetic = p.hbar * p.hbar / (p.mass * h * h);
    for (std::size_t j = 1; j < half.size(); ++j) CHECK(ham.matrix.diagonal[j] == doctest::Approx(kinetic).epsilon(1e-12));
    for (double e : ham.matrix.off_diagonal) CHECK(e == doctest::Approx(-0.5 * kinetic).epsilon(1e-12));

    for (double nu : {-0.3, 0.25, 1.5}) {
        for (int s : {1, -1}) {
            const auto m = hamiltonian_matrix(ParityChannel(s, nu), with_nu(nu), half, harmonic_potential(with_nu(nu)));
            const auto dense = m.matrix.to_dense();
            CHECK(dense == dense.transposed());
        }
    }

    const auto ho = hamiltonian_matrix(ParityChannel::even(0.5), with_nu(0.5), HalfGrid(12.0, 2000),
                                       harmonic_potential(with_nu(0.5)));
    CHECK(std::abs(tridiagonal_eigenvalues(ho.matrix).front() - 1.0) < 1e-4);

    CHECK_THROWS(hamiltonian_matrix(ParityChannel::even(0.5), with_nu(0.4), half, zero_potential()));
}

TEST_CASE("attractive channels on coarse grids are flagged") {
    const auto p = with_nu(0.25);
    const auto coarse = hamiltonian_matrix(ParityChannel::even(0.25), p, HalfGrid(12.0, 200), harmonic_potential(p));
    const auto fine = hamiltonian_matrix(ParityChannel::even(0.25), p, HalfGrid(12.0, 2000), harmonic_potential(p));
    const auto repulsive = hamiltonian_matrix(ParityChannel::odd(0.25), p, HalfGrid(12.0, 200), harmonic_potential(p));
    CHECK(coarse.warnings.size() == 1);
    CHECK(fine.warnings.empty());
    CHECK(repulsive.warnings.empty());
}
