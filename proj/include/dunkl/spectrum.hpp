#pragma once

#include <string>
#include <vector>

#include "dunkl/dunkl_operators.hpp"
#include "dunkl/matrix.hpp"

namespace dunkl {

/// E_n^+ = hbar omega (2n + nu + 1/2), E_n^- = hbar omega (2n + nu + 3/2).
double energy(int n, const ParityChannel& channel, const DunklParams& params);

/// Normalized oscillator eigenfunction on the whole line,
///   even: sqrt(n! / Gamma(n + nu + 1/2)) a^(nu/2 + 1/4) exp(-a x^2 / 2) L_n^(nu-1/2)(a x^2)
///   odd:  sqrt(n! / Gamma(n + nu + 3/2)) a^(nu/2 + 3/4) x exp(-a x^2 / 2) L_n^(nu+1/2)(a x^2)
/// with a = m omega / hbar. int Psi^2 |x|^(2 nu) dx = 1.
double wavefunction(int n, const ParityChannel& channel, const DunklParams& params, double x);

/// Psi_0(x) .. Psi_nmax(x) of one channel from a single Laguerre sweep.
std::vector<double> wavefunctions(int nmax, const ParityChannel& channel, const DunklParams& params, double x);

struct SpectralLine {
    int n;
    int parity;
    double energy;
    DunklParams params;

    double operator()(double x) const;
};

/// Both towers with n <= nmax, ordered by energy.
std::vector<SpectralLine> spectral_lines(int nmax, const DunklParams& params);

struct GramResult {
    Matrix<double> matrix;
    double max_deviation;  // max |G - I|
    std::vector<std::string> warnings;
};

/// Weighted inner products <Psi_m|Psi_n>, m, n <= nmax, in one channel, using the
/// node-weighted quadrature of weighted_inner_product on the given grid.
GramResult gram_matrix(int nmax, const ParityChannel& channel, const DunklParams& params, const Grid& grid);

}  // namespace dunkl
