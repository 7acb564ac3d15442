#include "dunkl/dunkl_operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("sampled functions live on different grids");
}

// int_j^{j+1} u^p_minus_one du with p = 2k + 1 > 0.
double cell_moment(std::size_t j, double p) {
    if (j == 0) return 1.0 / p;
    const double u = static_cast<double>(j);
    return std::pow(u, p) * std::expm1(p * std::log1p(1.0 / u)) / p;
}

// 1 / int_{j+1/2}^{j+3/2} u^(-2k) du with q = 1 - 2k.
double face_coefficient(std::size_t j, double q) {
    const double u = static_cast<double>(j) + 0.5;
    const double l = std::log1p(1.0 / u);
    if (q == 0.0) return 1.0 / l;
    return q / (std::pow(u, q) * std::expm1(q * l));
}

}  // namespace

void DunklParams::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be non-negative");
    if (!(nu > -0.5) || !std::isfinite(nu)) throw std::invalid_argument("nu must exceed -1/2");
}

double DunklParams::oscillator_length() const {
    if (!(omega > 0.0)) throw DomainError("oscillator length needs omega > 0");
    return std::sqrt(hbar / (mass * omega));
}

ParityChannel::ParityChannel(int s, double nu) : s_(s), nu_(nu) {
    if (s != 1 && s != -1) throw std::invalid_argument("parity must be +1 or -1");
    if (!(nu > -0.5)) throw std::invalid_argument("nu must exceed -1/2");
}

Grid::Grid(double half_width, int half_count) : half_width_(half_width), half_count_(half_count) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("grid half-width must be positive");
    if (half_count < 2) throw std::invalid_argument("grid needs at least two nodes per side");
}

double Grid::node(std::size_t i) const {
    return (static_cast<double>(i) - half_count_ + 0.5) * spacing();
}

std::vector<double> Grid::nodes() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
    return x;
}

HalfGrid Grid::half() const { return {half_width_, half_count_}; }

HalfGrid::HalfGrid(double half_width, int count) : half_width_(half_width), count_(count) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("grid half-width must be positive");
    if (count < 2) throw std::invalid_argument("half grid needs at least two nodes");
}

std::vector<double> HalfGrid::nodes() const {
    std::vector<double> y(size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = node(j);
    return y;
}

SampledFunction::SampledFunction(Grid g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) throw std::invalid_argument("sample count does not match the grid");
}

Potential zero_potential() {
    return [](double) { return 0.0; };
}

Potential harmonic_potential(const DunklParams& params) {
    const double k = 0.5 * params.mass * params.omega * params.omega;
    return [k](double y) { return k * y * y; };
}

SampledFunction reflect(const SampledFunction& f) {
    if (f.values.size() != f.grid.size()) throw std::invalid_argument("grid-asymmetric sample");
    std::vector<std::complex<double>> out(f.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.values[f.grid.reflected(i)];
    return {f.grid, std::move(out)};
}

SampledFunction dunkl_derivative(const SampledFunction& f, const DunklParams& params) {
    const Grid& g = f.grid;
    const std::size_t n = g.size();
    const double h = g.spacing();
    const auto& v = f.values;
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> d;
        if (i == 0)
            d = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        else if (i == n - 1)
            d = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
        else
            d = (v[i + 1] - v[i - 1]) / (2.0 * h);
        out[i] = d + params.nu / g.node(i) * (v[i] - v[g.reflected(i)]);
    }
    return {g, std::move(out)};
}

std::complex<double> weighted_integral(const SampledFunction& f, const DunklParams& params) {
    const Grid& g = f.grid;
    const std::size_t m = static_cast<std::size_t>(g.half_count());
    // Pair nodes x and -x so the weight is evaluated once per pair.
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t i = m + j;
        const double w = std::pow(std::abs(g.node(i)), 2.0 * params.nu);
        sum += w * (f.values[i] + f.values[g.reflected(i)]);
    }
    return sum * g.spacing();
}

std::complex<double> weighted_inner_product(const SampledFunction& f, const SampledFunction& g,
                                            const DunklParams& params) {
    require_same_grid(f, g);
    std::vector<std::complex<double>> product(f.values.size());
    for (std::size_t i = 0; i < product.size(); ++i) product[i] = std::conj(f.values[i]) * g.values[i];
    return weighted_integral(SampledFunction{f.grid, std::move(product)}, params);
}

SampledFunction parity_project(const SampledFunction& f, int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("parity must be +1 or -1");
    const SampledFunction r = reflect(f);
    std::vector<std::complex<double>> out(f.values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (f.values[i] + static_cast<double>(s) * r.values[i]);
    return {f.grid, std::move(out)};
}

double effective_potential(double y, const ParityChannel& channel, const DunklParams& params,
                           const Potential& potential) {
    if (!(y > 0.0)) throw DomainError("effective potential is defined for y > 0");
    const double centrifugal =
        params.hbar * params.hbar * channel.singular_strength() / (2.0 * params.mass * y * y);
    return centrifugal + potential(y);
}

ChannelHamiltonian hamiltonian_matrix(const ParityChannel& channel, const DunklParams& params,
                                      const HalfGrid& half, const Potential& potential) {
    params.validate();
    if (channel.nu() != params.nu) throw std::invalid_argument("channel and parameters disagree on nu");

    const std::size_t n = half.size();
    const double h = half.spacing();
    const double kappa = channel.weight_exponent();
    const double p = 2.0 * kappa + 1.0;
    const double q = 1.0 - 2.0 * kappa;
    const double scale = params.hbar * params.hbar / (2.0 * params.mass * h * h);

    std::vector<double> mass(n);
    std::vector<double> face(n);  // face[j] sits between nodes j and j + 1 (face[n-1]: Dirichlet ghost)
    for (std::size_t j = 0; j < n; ++j) {
        mass[j] = cell_moment(j, p);
        face[j] = face_coefficient(j, q);
    }

    ChannelHamiltonian out{half, channel, {}, mass, {}};
    out.matrix.diagonal.resize(n);
    out.matrix.off_diagonal.resize(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        const double inner = j == 0 ? 0.0 : face[j - 1];  // zero flux through the origin
        out.matrix.diagonal[j] = scale * (face[j] + inner) / mass[j] + potential(half.node(j));
        if (j + 1 < n) out.matrix.off_diagonal[j] = -scale * face[j] / std::sqrt(mass[j] * mass[j + 1]);
    }

    if (channel.singular_strength() < 0.0) {
        const double length = params.omega > 0.0 ? params.oscillator_length() : half.half_width();
        if (h > 0.05 * length) {
            std::ostringstream msg;
            msg << "attractive 1/y^2 tail (lambda^2 - 1/4 = " << channel.singular_strength()
                << ") on a coarse grid: h = " << h << " > 0.05 * " << length;
            out.warnings.push_back(msg.str());
        }
    }
    return out;
}

std::vector<double> ChannelHamiltonian::to_wavefunction(std::span<const double> v) const {
    if (v.size() != half.size()) throw std::invalid_argument("eigenvector size does not match the grid");
    const double h = half.spacing();
    const double kappa = channel.weight_exponent();
    const double odd_power = channel.sign() == 1 ? 0.0 : 1.0;
    std::vector<double> psi(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double chi = v[j] / std::sqrt(2.0 * std::pow(h, 2.0 * kappa + 1.0) * cell_mass[j]);
        psi[j] = std::pow(half.node(j), odd_power) * chi;
    }
    return psi;
}

std::vector<double> ChannelHamiltonian::to_profile(std::span<const double> v) const {
    auto psi = to_wavefunction(v);
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= std::pow(half.node(j), channel.nu());
    return psi;
}

}  // namespace dunkl
