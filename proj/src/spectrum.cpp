#include "dunkl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

void require_oscillator(const ParityChannel& channel, const DunklParams& params) {
    params.validate();
    if (!(params.omega > 0.0)) throw std::invalid_argument("oscillator states need omega > 0");
    if (channel.nu() != params.nu) throw std::invalid_argument("channel and parameters disagree on nu");
}

// Fills psi[0..nmax] at x; the Laguerre sweep is shared by all n.
void fill_wavefunctions(int nmax, const ParityChannel& channel, const DunklParams& params, double x,
                        std::span<double> psi) {
    const double a = params.mass * params.omega / params.hbar;
    const double mu = channel.lambda();
    const double t = a * x * x;
    const auto lag = laguerre_sequence(nmax, mu, t);
    const double odd = channel.sign() == 1 ? 1.0 : x;
    // log of a^(mu/2 + 1/2) / sqrt(Gamma(mu + 1)); a^(nu/2 + 1/4) for even, a^(nu/2 + 3/4) for odd
    double log_norm = 0.5 * (mu + 1.0) * std::log(a) - 0.5 * log_gamma(mu + 1.0) - 0.5 * t;
    for (int n = 0; n <= nmax; ++n) {
        if (n > 0) log_norm += 0.5 * std::log(n / (n + mu));
        psi[n] = std::exp(log_norm) * odd * lag[n];
    }
}

}  // namespace

double energy(int n, const ParityChannel& channel, const DunklParams& params) {
    if (n < 0) throw std::invalid_argument("quantum number must be non-negative");
    const double shift = channel.sign() == 1 ? 0.5 : 1.5;
    return params.hbar * params.omega * (2.0 * n + channel.nu() + shift);
}

std::vector<double> wavefunctions(int nmax, const ParityChannel& channel, const DunklParams& params, double x) {
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    require_oscillator(channel, params);
    std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
    fill_wavefunctions(nmax, channel, params, x, psi);
    return psi;
}

double wavefunction(int n, const ParityChannel& channel, const DunklParams& params, double x) {
    return wavefunctions(n, channel, params, x).back();
}

double SpectralLine::operator()(double x) const {
    return wavefunction(n, ParityChannel(parity, params.nu), params, x);
}

std::vector<SpectralLine> spectral_lines(int nmax, const DunklParams& params) {
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    std::vector<SpectralLine> lines;
    for (int n = 0; n <= nmax; ++n) {
        for (int s : {1, -1}) {
            const ParityChannel channel(s, params.nu);
            lines.push_back({n, s, energy(n, channel, params), params});
        }
    }
    std::stable_sort(lines.begin(), lines.end(),
                     [](const SpectralLine& l, const SpectralLine& r) { return l.energy < r.energy; });
    return lines;
}

GramResult gram_matrix(int nmax, const ParityChannel& channel, const DunklParams& params, const Grid& grid) {
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    require_oscillator(channel, params);
    const std::size_t k = static_cast<std::size_t>(nmax) + 1;
    const double h = grid.spacing();

    GramResult out{Matrix<double>(k, k), 0.0, {}};
    const double length = params.oscillator_length();
    if (h > 0.05 * length) {
        std::ostringstream msg;
        msg << "grid spacing " << h << " exceeds 0.05 oscillator lengths (" << 0.05 * length << ")";
        out.warnings.push_back(msg.str());
    }

    // Products of same-parity states are even, so each +-x pair contributes twice the
    // positive-node value; this is weighted_inner_product's pairing without the samples.
    std::vector<double> psi(k);
    Matrix<double>& g = out.matrix;
    const HalfGrid half = grid.half();
    for (std::size_t j = 0; j < half.size(); ++j) {
        const double y = half.node(j);
        fill_wavefunctions(nmax, channel, params, y, psi);
        const double w = 2.0 * h * std::pow(y, 2.0 * params.nu);
        for (std::size_t m = 0; m < k; ++m) {
            const double wm = w * psi[m];
            for (std::size_t n = m; n < k; ++n) g(m, n) += wm * psi[n];
        }
    }
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t n = m; n < k; ++n) {
            g(n, m) = g(m, n);
            out.max_deviation = std::max(out.max_deviation, std::abs(g(m, n) - (m == n ? 1.0 : 0.0)));
        }
    }
    return out;
}

}  // namespace dunkl
