#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "dunkl/dunkl_operators.hpp"
#include "dunkl/matrix.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

/// Propagation time T in the closed lower half-plane. Real time has Im T = 0;
/// Euclidean time is T = -i tau with tau > 0.
class ComplexTime {
public:
    explicit ComplexTime(complex value);

    static ComplexTime real_time(double t);
    static ComplexTime euclidean(double tau);

    complex value() const { return value_; }
    bool is_real() const { return value_.imag() == 0.0; }
    bool is_euclidean() const { return value_.real() == 0.0 && value_.imag() < 0.0; }

    /// tau for Euclidean times; throws std::logic_error otherwise.
    double tau() const;

private:
    complex value_;
};

enum class System { free, harmonic };

/// K(xb[i], xa[j]; T) for every pair of sample points.
struct Kernel {
    std::vector<double> xb;
    std::vector<double> xa;
    ComplexTime time;
    Matrix<complex> values;  // rows follow xb, columns follow xa
    std::vector<std::string> warnings;
};

/// Per-parity free kernel
///   (m / 2i hbar T) |xa xb|^(1/2 - nu) exp[(i m / 2 hbar T)(xa^2 + xb^2)] I_lambda(m |xa xb| / (i hbar T)),
/// lambda = nu - s/2. Carries the |xa xb|^(-nu) measure factor, so the full-line kernel is
/// K_+ + sgn(xa xb) K_-.
complex free_kernel_parity(double xb, double xa, const ComplexTime& T, const ParityChannel& channel,
                           const DunklParams& params);

/// Closed deformed-exponential form of the free kernel,
///   (1 / Gamma(nu + 1/2)) (m / 2i hbar T)^(nu + 1/2) exp[(i m / 2 hbar T)(xa^2 + xb^2)] E_nu(m xa xb / (i hbar T)).
complex free_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params);

/// Per-parity oscillator kernel from the resummed Laguerre series
///   K_s = a^(mu+1) |xa xb|^((1-s)/2) e^(-i omega T (mu+1)) (1-z)^(-mu-1)
///         exp[-(x+y)(1+z) / (2(1-z))] Itilde_mu(2 sqrt(xyz) / (1-z)),
/// with a = m omega / hbar, x = a xa^2, y = a xb^2, z = exp(-2i omega T), mu = lambda_s.
/// Throws NumericalError at a caustic (sin omega T = 0 in real time).
complex ho_kernel_parity(double xb, double xa, const ComplexTime& T, const ParityChannel& channel,
                         const DunklParams& params);

/// Closed deformed-exponential form of the oscillator kernel (equal to K_+ + sgn(xa xb) K_-),
///   Gamma(nu + 1/2)^-1 [a e^(-i omega T) / (1-z)]^(nu + 1/2) exp[-a (xa^2 + xb^2)(1+z) / (2(1-z))] E_nu(w),
/// w = 2a xa xb e^(-i omega T) / (1-z). Same caustic rule as ho_kernel_parity.
complex ho_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params);

/// Full-line kernel of the selected system, K_+ + sgn(xa xb) K_-. Evaluated through the
/// deformed-exponential forms, which avoid the cancellation between the two channels
/// when xa xb < 0.
complex full_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params, System system);

struct SpectralSum {
    complex value;
    double tail_estimate;  // relative size of the omitted terms; infinite in real time
    bool tail_ok;          // tail_estimate <= control.rel_tol
};

/// Truncated eigenfunction expansion sum_{n <= nmax} Psi_n(xb) Psi_n(xa) exp(-i E_n T / hbar)
/// over both parity towers.
SpectralSum ho_spectral_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params,
                               int nmax, const SeriesControl& control = {});

/// The same expansion restricted to one parity tower, written as the channel kernel K_s
/// (Psi_n(|xb|) Psi_n(|xa|) for the odd tower).
SpectralSum ho_spectral_kernel_parity(double xb, double xa, const ComplexTime& T,
                                      const ParityChannel& channel, const DunklParams& params, int nmax,
                                      const SeriesControl& control = {});

Kernel kernel_matrix(std::span<const double> xb, std::span<const double> xa, const ComplexTime& T,
                     const DunklParams& params, System system);

}  // namespace dunkl
