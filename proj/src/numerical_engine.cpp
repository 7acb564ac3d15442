#include "dunkl/numerical_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

constexpr int kMaxSweeps = 60;

void require_channel(const ParityChannel& channel, const DunklParams& params) {
    params.validate();
    if (channel.nu() != params.nu) throw std::invalid_argument("channel and parameters disagree on nu");
}

// Implicit-shift QL on a symmetric tridiagonal matrix (diagonal d, e[i] couples i and i + 1,
// e[n-1] = 0). If z is non-null its rows are rotated along; row k ends up as eigenvector k.
void tql(std::vector<double>& d, std::vector<double>& e, Matrix<double>* z) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
        if (m > l) {
            int sweeps = 0;
            do {
                if (++sweeps > kMaxSweeps)
                    throw ConvergenceError("QL iteration did not converge within " + std::to_string(kMaxSweeps) +
                                           " sweeps");
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0.0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if (z) {
                        auto zi = z->row(i);
                        auto zn = z->row(i + 1);
                        for (std::size_t k = 0; k < zi.size(); ++k) {
                            const double t = zn[k];
                            zn[k] = s * zi[k] + c * t;
                            zi[k] = c * zi[k] - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

// Householder reduction of a symmetric matrix to tridiagonal form. On return v holds the
// accumulated orthogonal transformation, d the diagonal and e[i] (i >= 1) the coupling of
// i - 1 and i.
void tred2(Matrix<double>& v, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = v.rows();
    for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0.0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k) v(k, j) -= f * e[k] + g * d[k];
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Sorts eigenpairs ascending; z holds eigenvectors as rows and is returned as columns.
EigenDecomposition sorted(std::vector<double> d, const Matrix<double>& z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    EigenDecomposition out{std::vector<double>(n), Matrix<double>(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = d[order[k]];
        auto src = z.row(order[k]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = src[i];
    }
    return out;
}

double max_effective_potential(const ParityChannel& channel, const DunklParams& params, const HalfGrid& half,
                               const Potential& potential) {
    double vmax = 0.0;
    for (std::size_t j = 0; j < half.size(); ++j)
        vmax = std::max(vmax, std::abs(effective_potential(half.node(j), channel, params, potential)));
    return vmax;
}

Matrix<double> slice_matrix(const ParityChannel& channel, const DunklParams& params, double eps,
                            const HalfGrid& half, const Potential& potential) {
    const std::size_t n = half.size();
    Matrix<double> s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s(i, j) = short_time_kernel(half.node(i), half.node(j), eps, channel, params, potential);
    return s;
}

void require_finite(std::span<const double> values, const std::vector<std::string>& warnings) {
    for (double x : values) {
        if (!std::isfinite(x)) {
            std::string msg = "time-sliced kernel overflowed";
            for (const auto& w : warnings) msg += "; " + w;
            throw NumericalError(msg);
        }
    }
}

}  // namespace

void SliceScheme::validate() const {
    if (slices < 1) throw std::invalid_argument("slice count N must be at least 1");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("Euclidean time tau must be positive");
}

double short_time_kernel(double yb, double ya, double eps, const ParityChannel& channel,
                         const DunklParams& params, const Potential& potential) {
    if (!(eps > 0.0)) throw std::invalid_argument("slice length must be positive");
    const double m = params.mass;
    const double hbar = params.hbar;
    const double dy = yb - ya;
    const double action = m * dy * dy / (2.0 * eps) + eps * effective_potential(yb, channel, params, potential);
    return std::sqrt(m / (2.0 * std::numbers::pi * hbar * eps)) * std::exp(-action / hbar);
}

std::vector<std::string> slicing_warnings(const ParityChannel& channel, const DunklParams& params,
                                          const SliceScheme& scheme, const HalfGrid& half,
                                          const Potential& potential) {
    std::vector<std::string> warnings;
    const double eps = scheme.epsilon();
    const double vmax = max_effective_potential(channel, params, half, potential);
    if (eps * vmax > 0.5) {
        std::ostringstream msg;
        msg << "slice too coarse for the effective potential: eps * max|V_eff| = " << eps * vmax << " > 0.5";
        warnings.push_back(msg.str());
    }
    return warnings;
}

Kernel time_sliced_kernel(const ParityChannel& channel, const DunklParams& params, const SliceScheme& scheme,
                          const HalfGrid& half, const Potential& potential) {
    require_channel(channel, params);
    scheme.validate();
    const double h = half.spacing();
    auto warnings = slicing_warnings(channel, params, scheme, half, potential);

    Matrix<double> a = slice_matrix(channel, params, scheme.epsilon(), half, potential);
    const std::size_t n = half.size();
    for (std::size_t i = 0; i < n; ++i)
        for (double& v : a.row(i)) v *= h;

    // (hS)^(N+1) / h by repeated squaring.
    Matrix<double> result;
    bool have_result = false;
    for (int p = scheme.slices + 1;;) {
        if (p & 1) {
            result = have_result ? multiply(result, a) : a;
            have_result = true;
        }
        p >>= 1;
        if (p == 0) break;
        a = multiply(a, a);
        require_finite(a.data(), warnings);
    }
    require_finite(result.data(), warnings);

    const auto y = half.nodes();
    Kernel out{y, y, ComplexTime::euclidean(scheme.tau), Matrix<complex>(n, n), std::move(warnings)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.values(i, j) = result(i, j) / h;
    return out;
}

Matrix<double> time_sliced_columns(const ParityChannel& channel, const DunklParams& params,
                                   const SliceScheme& scheme, const HalfGrid& half, const Potential& potential,
                                   std::span<const std::size_t> sources) {
    require_channel(channel, params);
    scheme.validate();
    const std::size_t n = half.size();
    const double h = half.spacing();
    const auto warnings = slicing_warnings(channel, params, scheme, half, potential);
    const Matrix<double> s = slice_matrix(channel, params, scheme.epsilon(), half, potential);

    Matrix<double> out(n, sources.size());
    std::vector<double> v(n), next(n);
    for (std::size_t c = 0; c < sources.size(); ++c) {
        if (sources[c] >= n) throw std::out_of_range("source index outside the half grid");
        for (std::size_t i = 0; i < n; ++i) v[i] = s(i, sources[c]);
        for (int step = 0; step < scheme.slices; ++step) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto row = s.row(i);
                double acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) acc += row[k] * v[k];
                next[i] = h * acc;
            }
            std::swap(v, next);
        }
        require_finite(v, warnings);
        for (std::size_t i = 0; i < n; ++i) out(i, c) = v[i];
    }
    return out;
}

Kernel compose(const Kernel& first, const Kernel& second, const HalfGrid& half) {
    if (first.xa.size() != half.size() || second.xb.size() != half.size())
        throw std::invalid_argument("composed kernels must share the quadrature grid");
    const double h = half.spacing();
    Matrix<complex> product = multiply(first.values, second.values);
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (complex& v : product.row(i)) v *= h;
    Kernel out{first.xb, second.xa, ComplexTime(first.time.value() + second.time.value()), std::move(product), {}};
    out.warnings = first.warnings;
    out.warnings.insert(out.warnings.end(), second.warnings.begin(), second.warnings.end());
    return out;
}

EigenDecomposition diagonalize(const Matrix<double>& symmetric) {
    const std::size_t n = symmetric.rows();
    if (symmetric.cols() != n) throw std::invalid_argument("diagonalize needs a square matrix");
    if (n == 0) return {};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (symmetric(i, j) != symmetric(j, i)) throw std::invalid_argument("diagonalize needs a symmetric matrix");

    Matrix<double> v = symmetric;
    std::vector<double> d(n), e(n);
    tred2(v, d, e);
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    Matrix<double> z = v.transposed();
    tql(d, e, &z);
    return sorted(std::move(d), z);
}

EigenDecomposition diagonalize(const SymmetricTridiagonal& t) {
    const std::size_t n = t.size();
    if (n == 0) return {};
    std::vector<double> d = t.diagonal;
    std::vector<double> e(t.off_diagonal);
    e.push_back(0.0);
    Matrix<double> z = Matrix<double>::identity(n);
    tql(d, e, &z);
    return sorted(std::move(d), z);
}

std::vector<double> tridiagonal_eigenvalues(const SymmetricTridiagonal& t) {
    std::vector<double> d = t.diagonal;
    if (d.empty()) return d;
    std::vector<double> e(t.off_diagonal);
    e.push_back(0.0);
    tql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

GridSpectrum grid_spectrum(const ParityChannel& channel, const DunklParams& params, double half_width,
                           int half_count, int levels, const Potential& potential) {
    if (levels < 1 || levels > half_count) throw std::invalid_argument("levels must lie in [1, M]");
    GridSpectrum out;
    for (int m : {half_count, 2 * half_count}) {
        const auto h = hamiltonian_matrix(channel, params, HalfGrid(half_width, m), potential);
        auto ev = tridiagonal_eigenvalues(h.matrix);
        ev.resize(static_cast<std::size_t>(levels));
        (m == half_count ? out.coarse : out.fine) = std::move(ev);
        for (const auto& w : h.warnings)
            if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end()) out.warnings.push_back(w);
    }
    out.extrapolated.resize(out.coarse.size());
    for (std::size_t k = 0; k < out.coarse.size(); ++k)
        out.extrapolated[k] = (4.0 * out.fine[k] - out.coarse[k]) / 3.0;
    return out;
}

GroundState ground_state_imaginary_time(const ParityChannel& channel, const DunklParams& params,
                                        const HalfGrid& half, const Potential& potential, double tau_step,
                                        int steps) {
    if (!(tau_step > 0.0)) throw std::invalid_argument("tau_step must be positive");
    if (steps < 1) throw std::invalid_argument("steps must be at least 1");
    const ChannelHamiltonian ham = hamiltonian_matrix(channel, params, half, potential);
    const std::size_t n = half.size();

    GroundState out{0.0, {}, SampledFunction(half.full(), std::vector<complex>(2 * n)), steps, ham.warnings};
    if (params.omega > 0.0 && tau_step * steps * 2.0 * params.hbar * params.omega < std::log(1e6)) {
        out.warnings.push_back("total imaginary time too short to suppress the first excited state below 1e-6");
    }

    const double width = params.omega > 0.0 ? params.oscillator_length() : 0.25 * half.half_width();
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double y = half.node(j) / width;
        v[j] = std::sqrt(ham.cell_mass[j]) * std::exp(-0.25 * y * y);
    }
    auto normalize = [](std::vector<double>& x) {
        double s = 0.0;
        for (double t : x) s += t * t;
        const double norm = std::sqrt(s);
        for (double& t : x) t /= norm;
        return norm;
    };
    normalize(v);

    // Thomas factorization of 1 + tau_step H, reused every step.
    const auto& d = ham.matrix.diagonal;
    const auto& e = ham.matrix.off_diagonal;
    // All pivots are positive exactly when 1 + tau_step H is positive definite; otherwise the
    // iteration would lock onto the level nearest -1/tau_step instead of the ground state.
    std::vector<double> pivot(n), upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        pivot[i] = 1.0 + tau_step * d[i];
        if (i > 0) pivot[i] -= tau_step * e[i - 1] * upper[i - 1];
        if (!(pivot[i] > 0.0))
            throw NumericalError("imaginary-time step too large: 1 + tau_step H is not positive definite");
        if (i + 1 < n) upper[i] = tau_step * e[i] / pivot[i];
    }

    double ratio = 1.0;
    for (int step = 0; step < steps; ++step) {
        // forward then backward substitution
        v[0] /= pivot[0];
        for (std::size_t i = 1; i < n; ++i) v[i] = (v[i] - tau_step * e[i - 1] * v[i - 1]) / pivot[i];
        for (std::size_t i = n - 1; i-- > 0;) v[i] -= upper[i] * v[i + 1];
        ratio = normalize(v);
        if (!std::isfinite(ratio) || ratio > 1e8)
            throw NumericalError("imaginary-time propagation diverged at step " + std::to_string(step + 1));
    }
    out.energy = (1.0 / ratio - 1.0) / tau_step;

    double total = 0.0;
    for (double t : v) total += t;
    if (total < 0.0)
        for (double& t : v) t = -t;
    out.profile = ham.to_profile(v);
    normalize(out.profile);

    const auto psi = ham.to_wavefunction(v);
    const double s = channel.sign();
    for (std::size_t j = 0; j < n; ++j) {
        out.state.values[n + j] = psi[j];
        out.state.values[n - 1 - j] = s * psi[j];
    }
    return out;
}

double convergence_order(std::span<const std::pair<double, double>> series) {
    if (series.size() < 3) throw std::invalid_argument("convergence fit needs at least three points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [n, err] : series) {
        if (!(n > 0.0) || !(err > 0.0) || !std::isfinite(err))
            throw std::invalid_argument("convergence fit needs positive N and positive finite errors");
        sx += std::log(n);
        sy += std::log(err);
    }
    const double k = static_cast<double>(series.size());
    const double mx = sx / k, my = sy / k;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, err] : series) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (!(sxx > 1e-12)) throw std::invalid_argument("degenerate convergence fit: all N coincide");
    return sxy / sxx;
}

}  // namespace dunkl
