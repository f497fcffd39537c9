#include <cmath>
#include <complex>

#include "shearlab/fft.hpp"
#include "shearlab/flow.hpp"

namespace shearlab {

namespace {

// Autocovariance of fractional Gaussian noise at lag k, step h:
// gamma(k) = h^{2H}/2 (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_cov(std::size_t k, double hurst, double h) {
    const double kk = static_cast<double>(k);
    const double p = 2.0 * hurst;
    return 0.5 * std::pow(h, p) *
           (std::pow(kk + 1.0, p) - 2.0 * std::pow(kk, p) +
            std::pow(std::abs(kk - 1.0), p));
}

std::vector<double> fgn_circulant(std::size_t m, double hurst, double h,
                                  GaussianStream& rng, bool& ok) {
    const std::size_t M = 2 * m;
    std::vector<std::complex<double>> c(M);
    for (std::size_t j = 0; j <= m; ++j) c[j] = fgn_cov(j, hurst, h);
    for (std::size_t j = m + 1; j < M; ++j) c[j] = c[M - j];
    dft_forward(c);  // eigenvalues of the circulant

    double max_eig = 0.0, min_eig = 0.0;
    std::vector<double> lam(M);
    for (std::size_t j = 0; j < M; ++j) {
        lam[j] = c[j].real();
        max_eig = std::max(max_eig, lam[j]);
        min_eig = std::min(min_eig, lam[j]);
    }
    // eigenvalues >= -1e-10 * max are roundoff, clamp; worse means the
    // embedding genuinely failed
    if (min_eig < -1e-10 * max_eig) {
        ok = false;
        return {};
    }
    for (auto& l : lam) l = std::max(l, 0.0);

    std::vector<std::complex<double>> z(M);
    const double inv_m = 1.0 / static_cast<double>(M);
    z[0] = std::sqrt(lam[0] * inv_m) * rng.normal();
    for (std::size_t j = 1; j < m; ++j) {
        const double a = rng.normal();
        const double b = rng.normal();
        const double s = std::sqrt(0.5 * lam[j] * inv_m);
        z[j] = std::complex<double>(s * a, s * b);
        z[M - j] = std::conj(z[j]);
    }
    z[m] = std::sqrt(lam[m] * inv_m) * rng.normal();
    dft_forward(z);

    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = z[j].real();
    ok = true;
    return out;
}

std::vector<double> fgn_cholesky(std::size_t m, double hurst, double h,
                                 GaussianStream& rng) {
    // dense lower-triangular factor of the fGn covariance
    std::vector<double> L(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = fgn_cov(i - j, hurst, h);
            for (std::size_t k = 0; k < j; ++k) s -= L[i * m + k] * L[j * m + k];
            if (i == j) {
                if (s <= 0.0)
                    throw EmbeddingFailure("fbm: covariance not positive definite");
                L[i * m + i] = std::sqrt(s);
            } else {
                L[i * m + j] = s / L[j * m + j];
            }
        }
    }
    std::vector<double> z(m);
    rng.fill_normal(z);
    std::vector<double> out(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += L[i * m + k] * z[k];
        out[i] = s;
    }
    return out;
}

}  // namespace

FlowSample sample_fbm(double hurst, const Grid1D& grid, RandomSeed seed) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw BadParameter("sample_fbm: hurst must lie in (0,1)");
    if (grid.domain() != Domain::Interval)
        throw BadParameter("sample_fbm: needs Interval(0, pi) grid");

    const std::size_t n = grid.size();
    const std::size_t m = n - 1;  // increments between the n nodes
    GaussianStream rng(seed);

    bool ok = false;
    std::vector<double> inc = fgn_circulant(m, hurst, grid.spacing(), rng, ok);
    if (!ok) {
        if (n > 4096)
            throw EmbeddingFailure(
                "fbm: circulant spectrum has negative eigenvalues and n > 4096");
        inc = fgn_cholesky(m, hurst, grid.spacing(), rng);
    }

    std::vector<double> x(n);
    x[0] = 0.0;
    for (std::size_t j = 0; j < m; ++j) x[j + 1] = x[j] + inc[j];

    FlowMeta meta{"fbm", {{"hurst", hurst}}, seed};
    return FlowSample(grid, std::move(x), std::move(meta));
}

}  // namespace shearlab
