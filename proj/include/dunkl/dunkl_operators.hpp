#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dunkl/matrix.hpp"

namespace dunkl {

/// Physical constants and the Wigner parameter. Defaults are natural units.
struct DunklParams {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;  // 0 for the free particle
    double nu = 0.0;

    /// Throws std::invalid_argument unless hbar, mass > 0, omega >= 0 and nu > -1/2.
    void validate() const;

    /// Oscillator length sqrt(hbar / (m omega)); requires omega > 0.
    double oscillator_length() const;
};

/// Parity sector s = +1 (even) or s = -1 (odd) of the reflection operator.
class ParityChannel {
public:
    ParityChannel(int s, double nu);

    static ParityChannel even(double nu) { return {+1, nu}; }
    static ParityChannel odd(double nu) { return {-1, nu}; }

    int sign() const { return s_; }
    double nu() const { return nu_; }

    /// lambda_s = nu - s/2; equals alpha = nu - 1/2 for s = +1 and beta = nu + 1/2 for s = -1.
    double lambda() const { return nu_ - 0.5 * s_; }

    /// lambda^2 - 1/4 = nu (nu - s), the strength of the centrifugal term.
    double singular_strength() const { return nu_ * (nu_ - s_); }

    /// kappa = lambda + 1/2. The channel is the even problem with weight |y|^(2 kappa).
    double weight_exponent() const { return lambda() + 0.5; }

    friend bool operator==(const ParityChannel&, const ParityChannel&) = default;

private:
    int s_;
    double nu_;
};

class HalfGrid;

/// Symmetric, zero-excluding grid: x_j = (j + 1/2) h for j = -M .. M-1, h = L / M.
/// Node i (0-based) is x = (i - M + 1/2) h, so node i reflects onto node 2M - 1 - i exactly.
class Grid {
public:
    Grid(double half_width, int half_count);

    double half_width() const { return half_width_; }
    int half_count() const { return half_count_; }
    std::size_t size() const { return 2 * static_cast<std::size_t>(half_count_); }
    double spacing() const { return half_width_ / half_count_; }
    double node(std::size_t i) const;
    std::vector<double> nodes() const;
    std::size_t reflected(std::size_t i) const { return size() - 1 - i; }

    HalfGrid half() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double half_width_;
    int half_count_;
};

/// Positive half of a Grid: y_j = (j + 1/2) h, j = 0 .. M-1.
class HalfGrid {
public:
    HalfGrid(double half_width, int count);

    double half_width() const { return half_width_; }
    std::size_t size() const { return static_cast<std::size_t>(count_); }
    int count() const { return count_; }
    double spacing() const { return half_width_ / count_; }
    double node(std::size_t j) const { return (static_cast<double>(j) + 0.5) * spacing(); }
    std::vector<double> nodes() const;

    Grid full() const { return {half_width_, count_}; }

    friend bool operator==(const HalfGrid&, const HalfGrid&) = default;

private:
    double half_width_;
    int count_;
};

/// Complex samples of a function on a symmetric Grid.
struct SampledFunction {
    Grid grid;
    std::vector<std::complex<double>> values;

    SampledFunction(Grid g, std::vector<std::complex<double>> v);

    template <class F>
    static SampledFunction sample(const Grid& g, F&& f) {
        std::vector<std::complex<double>> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
        return {g, std::move(v)};
    }
};

/// External potential V(y), y > 0 (the channel problems live on the half-line).
using Potential = std::function<double(double)>;

Potential zero_potential();
Potential harmonic_potential(const DunklParams& params);

/// (Rf)(x) = f(-x).
SampledFunction reflect(const SampledFunction& f);

/// D_x f = f' + (nu / x)(f(x) - f(-x)); second-order central differences inside,
/// second-order one-sided stencils at the two end nodes.
SampledFunction dunkl_derivative(const SampledFunction& f, const DunklParams& params);

/// <f|g> = int conj(f) g |x|^(2 nu) dx, nodewise weight, uniform-grid quadrature.
std::complex<double> weighted_inner_product(const SampledFunction& f, const SampledFunction& g,
                                            const DunklParams& params);

/// int f |x|^(2 nu) dx with the same quadrature as weighted_inner_product.
std::complex<double> weighted_integral(const SampledFunction& f, const DunklParams& params);

/// (f + s R f) / 2.
SampledFunction parity_project(const SampledFunction& f, int s);

/// hbar^2 (lambda_s^2 - 1/4) / (2 m y^2) + V(y).
double effective_potential(double y, const ParityChannel& channel, const DunklParams& params,
                           const Potential& potential);

/// Per-channel Hamiltonian on the half-line in the flat-measure variable phi = y^nu psi.
///
/// The channel operator is written as -hbar^2/(2m) y^(-2k) d/dy y^(2k) d/dy acting on the
/// even function chi = psi / y^((1-s)/2), k = lambda_s + 1/2, and discretized in conservative
/// form with exact cell moments of y^(2k) and exact face coefficients, zero flux at the origin
/// and Dirichlet truncation beyond y = L. Symmetrizing with the square roots of the cell masses
/// gives a symmetric tridiagonal matrix whose continuum limit is -hbar^2/(2m) d^2/dy^2 + V_eff.
/// At nu = 0 the interior rows are exactly the three-point stencil.
struct ChannelHamiltonian {
    HalfGrid half;
    ParityChannel channel;
    SymmetricTridiagonal matrix;
    std::vector<double> cell_mass;  // (1/h) int_cell y^(2k) dy, in units of h^(2k)
    std::vector<std::string> warnings;

    /// Maps a unit-norm eigenvector to the full-line wavefunction psi at the positive nodes,
    /// normalized so that int |psi|^2 |x|^(2 nu) dx = 1 over the whole line.
    std::vector<double> to_wavefunction(std::span<const double> v) const;

    /// Maps a unit-norm eigenvector to the flat-measure profile phi_j = y_j^nu psi(y_j).
    std::vector<double> to_profile(std::span<const double> v) const;
};

ChannelHamiltonian hamiltonian_matrix(const ParityChannel& channel, const DunklParams& params,
                                      const HalfGrid& half, const Potential& potential);

}  // namespace dunkl
