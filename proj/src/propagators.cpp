#include "dunkl/propagators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dunkl/errors.hpp"
#include "dunkl/spectrum.hpp"
#include "internal.hpp"

namespace dunkl {

namespace {

const complex kI{0.0, 1.0};

void require_points(double xb, double xa) {
    if (xa == 0.0 || xb == 0.0) throw DomainError("kernels are evaluated off the origin (xa, xb != 0)");
    if (!std::isfinite(xa) || !std::isfinite(xb)) throw DomainError("kernel arguments must be finite");
}

void require_channel(const ParityChannel& channel, const DunklParams& params) {
    params.validate();
    if (channel.nu() != params.nu) throw std::invalid_argument("channel and parameters disagree on nu");
}

// m / (i hbar T); real and positive in Euclidean time.
complex inverse_time(const ComplexTime& T, const DunklParams& params) {
    return params.mass / (kI * params.hbar * T.value());
}

}  // namespace

ComplexTime::ComplexTime(complex value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw std::invalid_argument("time must be finite");
    if (value.imag() > 0.0) throw std::invalid_argument("time must lie in the lower half-plane (Im T <= 0)");
    if (value == complex{0.0, 0.0}) throw std::invalid_argument("kernels are singular at T = 0");
}

ComplexTime ComplexTime::real_time(double t) { return ComplexTime(complex{t, 0.0}); }

ComplexTime ComplexTime::euclidean(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("Euclidean time tau must be positive");
    return ComplexTime(complex{0.0, -tau});
}

double ComplexTime::tau() const {
    if (!is_euclidean()) throw std::logic_error("tau requested for a non-Euclidean time");
    return -value_.imag();
}

complex free_kernel_parity(double xb, double xa, const ComplexTime& T, const ParityChannel& channel,
                           const DunklParams& params) {
    require_points(xb, xa);
    require_channel(channel, params);
    const complex c = inverse_time(T, params);
    const double r = std::abs(xa * xb);
    const complex w = c * r;
    // exp(-c (xa^2 + xb^2)/2) I(w) = exp(-c (xa^2 + xb^2)/2 + |Re w|) * scaled I(w)
    const complex exponent = -0.5 * c * (xa * xa + xb * xb) + std::abs(w.real());
    return 0.5 * c * std::pow(r, 0.5 - params.nu) * std::exp(exponent) *
           modified_bessel_i_scaled(channel.lambda(), w);
}

complex free_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params) {
    require_points(xb, xa);
    params.validate();
    const double nu = params.nu;
    const complex c = inverse_time(T, params);
    const complex w = c * xa * xb;
    const complex log_prefactor = (nu + 0.5) * std::log(0.5 * c) - log_gamma(nu + 0.5);
    const complex exponent = log_prefactor - 0.5 * c * (xa * xa + xb * xb) + std::abs(w.real());
    return std::exp(exponent) * deformed_exponential_scaled(nu, w);
}

complex ho_kernel_parity(double xb, double xa, const ComplexTime& T, const ParityChannel& channel,
                         const DunklParams& params) {
    require_points(xb, xa);
    require_channel(channel, params);
    if (!(params.omega > 0.0)) throw DomainError("the oscillator kernel needs omega > 0");
    const complex phase = params.omega * T.value();
    if (T.is_real() && std::abs(std::sin(phase.real())) < 1e-12)
        throw NumericalError("caustic: sin(omega T) = 0, the oscillator kernel is singular");

    const double a = params.mass * params.omega / params.hbar;
    const double mu = channel.lambda();
    const double x = a * xa * xa;
    const double y = a * xb * xb;
    const complex z = std::exp(-2.0 * kI * phase);
    const complex one_minus_z = detail::one_minus_exp(-2.0 * kI * phase);
    const complex closed = detail::hille_hardy_closed(x, y, z, one_minus_z, mu, SeriesControl{});
    const double odd = channel.sign() == 1 ? 1.0 : std::abs(xa * xb);
    return std::pow(a, mu + 1.0) * odd * std::exp(-kI * phase * (mu + 1.0)) * closed;
}

complex ho_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params) {
    require_points(xb, xa);
    params.validate();
    if (!(params.omega > 0.0)) throw DomainError("the oscillator kernel needs omega > 0");
    const complex phase = params.omega * T.value();
    if (T.is_real() && std::abs(std::sin(phase.real())) < 1e-12)
        throw NumericalError("caustic: sin(omega T) = 0, the oscillator kernel is singular");

    const double nu = params.nu;
    const double a = params.mass * params.omega / params.hbar;
    const complex z = std::exp(-2.0 * kI * phase);
    const complex one_minus_z = detail::one_minus_exp(-2.0 * kI * phase);
    if (std::abs(one_minus_z) < 1e-14) throw NumericalError("oscillator kernel singular at exp(-2i omega T) = 1");
    const complex w = 2.0 * a * xa * xb * std::exp(-kI * phase) / one_minus_z;
    const complex exponent = (nu + 0.5) * (std::log(a) - kI * phase - std::log(one_minus_z)) -
                             log_gamma(nu + 0.5) -
                             0.5 * a * (xa * xa + xb * xb) * (1.0 + z) / one_minus_z + std::abs(w.real());
    return std::exp(exponent) * deformed_exponential_scaled(nu, w);
}

complex full_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params, System system) {
    return system == System::free ? free_kernel(xb, xa, T, params) : ho_kernel(xb, xa, T, params);
}

namespace {

// Adds the channel's terms n <= nmax to sum and returns |first omitted term| times the
// geometric factor of the remaining tail.
double accumulate_tower(double xb, double xa, const ComplexTime& T, const ParityChannel& channel,
                        const DunklParams& params, int nmax, complex& sum) {
    const auto pb = wavefunctions(nmax + 1, channel, params, xb);
    const auto pa = wavefunctions(nmax + 1, channel, params, xa);
    const complex factor = -kI * T.value() / params.hbar;
    for (int n = 0; n <= nmax; ++n) sum += pb[n] * pa[n] * std::exp(factor * energy(n, channel, params));
    const double ratio = std::exp(2.0 * params.omega * T.value().imag());  // |exp(-2 i omega T)|
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    const double next = std::abs(pb[nmax + 1] * pa[nmax + 1] *
                                 std::exp(factor * energy(nmax + 1, channel, params)));
    return next / (1.0 - ratio);
}

SpectralSum finish(complex value, double tail, const SeriesControl& control) {
    const double scale = std::abs(value);
    double relative = tail;
    if (std::isfinite(tail)) relative = scale > 0.0 ? tail / scale : (tail > 0.0 ? HUGE_VAL : 0.0);
    return {value, relative, relative <= control.rel_tol};
}

}  // namespace

SpectralSum ho_spectral_kernel(double xb, double xa, const ComplexTime& T, const DunklParams& params,
                               int nmax, const SeriesControl& control) {
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    control.validate();
    complex sum = 0.0;
    double tail = accumulate_tower(xb, xa, T, ParityChannel::even(params.nu), params, nmax, sum);
    tail += accumulate_tower(xb, xa, T, ParityChannel::odd(params.nu), params, nmax, sum);
    return finish(sum, tail, control);
}

SpectralSum ho_spectral_kernel_parity(double xb, double xa, const ComplexTime& T,
                                      const ParityChannel& channel, const DunklParams& params, int nmax,
                                      const SeriesControl& control) {
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    require_channel(channel, params);
    control.validate();
    complex sum = 0.0;
    const double tail = accumulate_tower(std::abs(xb), std::abs(xa), T, channel, params, nmax, sum);
    return finish(sum, tail, control);
}

Kernel kernel_matrix(std::span<const double> xb, std::span<const double> xa, const ComplexTime& T,
                     const DunklParams& params, System system) {
    Kernel k{{xb.begin(), xb.end()}, {xa.begin(), xa.end()}, T, Matrix<complex>(xb.size(), xa.size()), {}};
    for (std::size_t i = 0; i < xb.size(); ++i)
        for (std::size_t j = 0; j < xa.size(); ++j) k.values(i, j) = full_kernel(xb[i], xa[j], T, params, system);
    return k;
}

}  // namespace dunkl
