#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/dunkl_operators.hpp"
#include "dunkl/matrix.hpp"
#include "dunkl/propagators.hpp"

namespace dunkl {

/// N slices of a Euclidean interval tau: N + 1 short-time factors of length tau / (N + 1).
struct SliceScheme {
    int slices = 1;
    double tau = 1.0;

    double epsilon() const { return tau / (slices + 1); }
    void validate() const;
};

/// Eigenvalues ascending; eigenvector k is column k.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix<double> eigenvectors;
};

/// sqrt(m / (2 pi hbar eps)) exp{-[m (yb - ya)^2 / (2 eps) + eps V_eff(yb)] / hbar}.
double short_time_kernel(double yb, double ya, double eps, const ParityChannel& channel,
                         const DunklParams& params, const Potential& potential);

/// Warnings for a slicing: fires when eps * max |V_eff| over the half grid exceeds 1/2.
std::vector<std::string> slicing_warnings(const ParityChannel& channel, const DunklParams& params,
                                          const SliceScheme& scheme, const HalfGrid& half,
                                          const Potential& potential);

/// Half-line channel kernel in the flat measure, K_phi(yb, ya) = 2 (ya yb)^nu K_s(yb, ya),
/// from N + 1 short-time factors composed by midpoint quadrature over the half grid.
/// Uses repeated squaring of the slice matrix. Throws NumericalError on overflow.
Kernel time_sliced_kernel(const ParityChannel& channel, const DunklParams& params, const SliceScheme& scheme,
                          const HalfGrid& half, const Potential& potential);

/// Selected columns K_phi(., y_a) of the same lattice kernel, one matrix-vector product per slice.
/// Cheaper than the full matrix when only a few source points are needed.
Matrix<double> time_sliced_columns(const ParityChannel& channel, const DunklParams& params,
                                   const SliceScheme& scheme, const HalfGrid& half, const Potential& potential,
                                   std::span<const std::size_t> sources);

/// int K1(yb, y) K2(y, ya) dy on the half grid (flat measure).
Kernel compose(const Kernel& first, const Kernel& second, const HalfGrid& half);

/// Householder tridiagonalization followed by implicit-shift QL. Throws ConvergenceError
/// if an eigenvalue needs more than 60 sweeps.
EigenDecomposition diagonalize(const Matrix<double>& symmetric);
EigenDecomposition diagonalize(const SymmetricTridiagonal& t);

/// Eigenvalues only, ascending (QL without vector accumulation).
std::vector<double> tridiagonal_eigenvalues(const SymmetricTridiagonal& t);

/// Lowest eigenvalues of hamiltonian_matrix at M and 2M half-nodes and their Richardson
/// extrapolation (4 E_2M - E_M) / 3.
struct GridSpectrum {
    std::vector<double> coarse;
    std::vector<double> fine;
    std::vector<double> extrapolated;
    std::vector<std::string> warnings;
};

GridSpectrum grid_spectrum(const ParityChannel& channel, const DunklParams& params, double half_width,
                           int half_count, int levels, const Potential& potential);

struct GroundState {
    double energy;
    std::vector<double> profile;  // phi = y^nu psi on the half grid, unit Euclidean norm
    SampledFunction state;        // psi on the full grid, unit weighted norm, parity of the channel
    int steps;
    std::vector<std::string> warnings;
};

/// Imaginary-time relaxation with the backward-Euler propagator (1 + tau_step H)^(-1) of
/// hamiltonian_matrix, renormalizing after every step. The energy is read off the last norm
/// ratio r as (1/r - 1) / tau_step. Throws NumericalError if the norms blow up.
GroundState ground_state_imaginary_time(const ParityChannel& channel, const DunklParams& params,
                                        const HalfGrid& half, const Potential& potential, double tau_step,
                                        int steps);

/// Least-squares slope of log(error) against log(N).
double convergence_order(std::span<const std::pair<double, double>> series);

}  // namespace dunkl
