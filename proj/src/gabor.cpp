#include "pghi/gabor.hpp"

#include "fft.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace pghi
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;

        std::size_t wrap(std::ptrdiff_t i, std::size_t L) noexcept
        {
            const auto n = static_cast<std::ptrdiff_t>(L);
            auto r = i % n;
            return static_cast<std::size_t>(r < 0 ? r + n : r);
        }

        /// Range of centred offsets [lo, hi] outside of which the window is
        /// exactly zero. Never covers more than L distinct indices.
        std::pair<std::ptrdiff_t, std::ptrdiff_t> nonzero_offsets(const std::vector<double>& g)
        {
            const auto L = static_cast<std::ptrdiff_t>(g.size());
            std::ptrdiff_t radius = 0;
            for (std::ptrdiff_t j = 1; j <= L / 2; ++j)
            {
                if (g[static_cast<std::size_t>(j)] != 0.0 || g[static_cast<std::size_t>(L - j)] != 0.0)
                {
                    radius = j;
                }
            }
            if (2 * radius + 1 > L)
            {
                return {-(L - 1) / 2, L / 2};
            }
            return {-radius, radius};
        }

        void check_window(const Window& g, const GaborParams& p, const char* what)
        {
            if (g.length() != p.L())
            {
                throw DimensionError(std::string(what) + ": window length " + std::to_string(g.length()) +
                                     " does not match L = " + std::to_string(p.L()));
            }
        }

        template <typename Sample>
        ComplexGrid analyze(std::span<const Sample> f, const Window& g, const GaborParams& p)
        {
            if (f.size() != p.L())
            {
                throw DimensionError("dgt: signal length " + std::to_string(f.size()) + " does not match L = " +
                                     std::to_string(p.L()));
            }
            check_window(g, p, "dgt");
            const std::size_t L = p.L();
            const std::size_t M = p.M();
            const std::size_t a = p.a();
            const auto [lo, hi] = nonzero_offsets(g.samples);

            ComplexGrid c(M, p.N());
            for (std::size_t n = 0; n < p.N(); ++n)
            {
                auto col = c.column(n);
                // Running indices for g(j), bin j mod M and f(na + j).
                std::size_t ig = wrap(lo, L);
                std::size_t im = wrap(lo, M);
                std::size_t il = wrap(static_cast<std::ptrdiff_t>(n * a) + lo, L);
                for (std::ptrdiff_t j = lo; j <= hi; ++j)
                {
                    const double w = g.samples[ig];
                    if (w != 0.0)
                    {
                        col[im] += cplx(f[il]) * w;
                    }
                    ig = ig + 1 == L ? 0 : ig + 1;
                    im = im + 1 == M ? 0 : im + 1;
                    il = il + 1 == L ? 0 : il + 1;
                }
                detail::fft_forward(col);
            }
            return c;
        }
    }  // namespace

    GaborParams::GaborParams(std::size_t L, std::size_t a, std::size_t M) : m_L(L), m_a(a), m_M(M)
    {
        if (L == 0 || a == 0 || M == 0)
        {
            throw DimensionError("GaborParams: L, a and M must be positive");
        }
        if (L % a != 0 || L % M != 0)
        {
            throw DimensionError("GaborParams: a = " + std::to_string(a) + " and M = " + std::to_string(M) +
                                 " must divide L = " + std::to_string(L));
        }
        if (M < a)
        {
            throw DimensionError("GaborParams: redundancy M/a must be at least 1");
        }
    }

    WindowKind parse_window_kind(std::string_view name)
    {
        if (name == "gauss")
        {
            return WindowKind::gauss;
        }
        if (name == "truncgauss")
        {
            return WindowKind::truncgauss;
        }
        if (name == "hann")
        {
            return WindowKind::hann;
        }
        if (name == "hamming")
        {
            return WindowKind::hamming;
        }
        throw std::invalid_argument("unknown window kind '" + std::string(name) + "'");
    }

    std::string_view to_string(WindowKind kind) noexcept
    {
        switch (kind)
        {
        case WindowKind::gauss: return "gauss";
        case WindowKind::truncgauss: return "truncgauss";
        case WindowKind::hann: return "hann";
        case WindowKind::hamming: return "hamming";
        }
        return "unknown";
    }

    std::vector<double> periodized_gaussian(std::size_t L, double lambda, int k_min, int k_max)
    {
        if (!(lambda > 0.0))
        {
            throw std::invalid_argument("periodized_gaussian: lambda must be positive");
        }
        const double gamma = lambda * static_cast<double>(L);
        const double scale = std::pow(gamma / 2.0, -0.25);
        std::vector<double> g(L, 0.0);
        for (std::size_t l = 0; l < L; ++l)
        {
            double acc = 0.0;
            for (int k = k_min; k <= k_max; ++k)
            {
                const double x = static_cast<double>(l) + static_cast<double>(k) * static_cast<double>(L);
                acc += std::exp(-kPi * x * x / gamma);
            }
            g[l] = scale * acc;
        }
        return g;
    }

    double gaussian_width(double gamma, double h) { return std::sqrt(-4.0 * std::log(h) / kPi * gamma); }

    double gamma_from_width(double width, double h) { return width * width * kPi / (-4.0 * std::log(h)); }

    double window_gamma(const Window& g)
    {
        if (g.kind == WindowKind::gauss || g.kind == WindowKind::truncgauss)
        {
            return g.lambda * static_cast<double>(g.length());
        }
        const std::size_t L = g.length();
        const auto [lo, hi] = nonzero_offsets(g.samples);
        auto misfit = [&](double log_gamma) {
            const double gamma = std::exp(log_gamma);
            double acc = 0.0;
            for (std::ptrdiff_t j = -static_cast<std::ptrdiff_t>(L / 2); j < static_cast<std::ptrdiff_t>((L + 1) / 2);
                 ++j)
            {
                const double x = static_cast<double>(j);
                const double w = (j >= lo && j <= hi) ? g.samples[wrap(j, L)] : 0.0;
                const double d = w - std::exp(-kPi * x * x / gamma);
                acc += d * d;
            }
            return acc;
        };
        const double s = static_cast<double>(std::max<std::size_t>(g.support, 1));
        const auto [best, value] =
            boost::math::tools::brent_find_minima(misfit, std::log(0.01 * s * s), std::log(4.0 * s * s), 40);
        (void)value;
        return std::exp(best);
    }

    Window make_window(WindowKind kind, const GaborParams& p, std::size_t support, double lambda)
    {
        const std::size_t L = p.L();
        if (support == 0 || support > L)
        {
            throw std::invalid_argument("make_window: support " + std::to_string(support) + " must be in [1, L = " +
                                        std::to_string(L) + "]");
        }
        const bool gaussian = kind == WindowKind::gauss || kind == WindowKind::truncgauss;
        if (gaussian && !(lambda > 0.0))
        {
            throw std::invalid_argument("make_window: Gaussian windows need lambda > 0");
        }

        Window w;
        w.kind = kind;
        w.lambda = gaussian ? lambda : 0.0;
        w.support = kind == WindowKind::gauss ? L : support;
        w.samples.assign(L, 0.0);

        // Centred gate weight for offset j: 1 inside, 1/2 on both ends of an
        // even-length support.
        const auto s = static_cast<std::ptrdiff_t>(support);
        auto gate = [s](std::ptrdiff_t j) {
            const auto aj = j < 0 ? -j : j;
            if (s % 2 == 1)
            {
                return aj <= (s - 1) / 2 ? 1.0 : 0.0;
            }
            if (aj < s / 2)
            {
                return 1.0;
            }
            return aj == s / 2 ? 0.5 : 0.0;
        };
        const std::ptrdiff_t reach = s / 2;

        switch (kind)
        {
        case WindowKind::gauss:
        case WindowKind::truncgauss:
        {
            auto g = periodized_gaussian(L, lambda);
            const double peak = g[0];
            for (auto& v : g)
            {
                v /= peak;
            }
            if (kind == WindowKind::gauss)
            {
                w.samples = std::move(g);
                break;
            }
            for (std::ptrdiff_t j = -reach; j <= reach; ++j)
            {
                const double weight = gate(j);
                if (weight > 0.0)
                {
                    w.samples[wrap(j, L)] += weight * g[wrap(j, L)];
                }
            }
            break;
        }
        case WindowKind::hann:
        case WindowKind::hamming:
        {
            const double a0 = kind == WindowKind::hann ? 0.5 : 0.54;
            const double a1 = 1.0 - a0;
            for (std::ptrdiff_t j = -reach; j <= reach; ++j)
            {
                const double weight = gate(j);
                if (weight > 0.0)
                {
                    const double v = a0 + a1 * std::cos(2.0 * kPi * static_cast<double>(j) / static_cast<double>(s));
                    w.samples[wrap(j, L)] += weight * v;
                }
            }
            break;
        }
        }

        const double peak = w.samples[0];
        if (!(peak > 0.0) || !std::isfinite(peak))
        {
            throw NumericalError("make_window: degenerate window");
        }
        for (auto& v : w.samples)
        {
            v /= peak;
        }
        return w;
    }

    Window canonical_dual(const Window& g, const GaborParams& p)
    {
        check_window(g, p, "canonical_dual");
        const std::size_t L = p.L();
        const std::size_t a = p.a();
        const std::size_t M = p.M();
        const std::size_t N = p.N();
        const std::size_t b = p.b();

        // S f(l) = sum_k W_k(l) f(l - kM) with W_k a-periodic:
        // W_k(l) = M sum_n g(l - na) g(l - kM - na).
        std::vector<double> W(b * a, 0.0);
        std::vector<bool> band_used(b, false);
        for (std::size_t k = 0; k < b; ++k)
        {
            for (std::size_t l = 0; l < a; ++l)
            {
                double acc = 0.0;
                for (std::size_t n = 0; n < N; ++n)
                {
                    const auto shift = static_cast<std::ptrdiff_t>(l) - static_cast<std::ptrdiff_t>(n * a);
                    const double g1 = g.samples[wrap(shift, L)];
                    if (g1 == 0.0)
                    {
                        continue;
                    }
                    acc += g1 * g.samples[wrap(shift - static_cast<std::ptrdiff_t>(k * M), L)];
                }
                W[k * a + l] = static_cast<double>(M) * acc;
                if (acc != 0.0)
                {
                    band_used[k] = true;
                }
            }
        }

        // The frame operator splits into M blocks of size b x b, one per
        // residue r = l mod M. Blocks r and r + a are cyclic permutations of
        // each other, so gcd(a, M) blocks carry the whole spectrum.
        auto block = [&](std::size_t r) {
            Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
            for (std::size_t pi = 0; pi < b; ++pi)
            {
                const std::size_t phase = (r + pi * M) % a;
                for (std::size_t k = 0; k < b; ++k)
                {
                    if (!band_used[k])
                    {
                        continue;
                    }
                    const std::size_t q = (pi + b - k) % b;
                    B(static_cast<Eigen::Index>(pi), static_cast<Eigen::Index>(q)) += W[k * a + phase];
                }
            }
            return B;
        };

        double min_eig = std::numeric_limits<double>::infinity();
        double max_eig = 0.0;
        const std::size_t distinct = std::gcd(a, M);
        for (std::size_t r = 0; r < distinct; ++r)
        {
            Eigen::MatrixXd B = block(r);
            Eigen::MatrixXd sym = 0.5 * (B + B.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
            max_eig = std::max(max_eig, eig.eigenvalues().maxCoeff());
        }
        if (!(max_eig > 0.0) || min_eig < 1e-10 * max_eig)
        {
            throw NumericalError("canonical_dual: Gabor system is not a frame (eigenvalue ratio " +
                                 std::to_string(max_eig > 0.0 ? min_eig / max_eig : 0.0) + ")");
        }

        Window gd = g;
        const bool diagonal = std::none_of(band_used.begin() + 1, band_used.end(), [](bool u) { return u; });
        for (std::size_t r = 0; r < M; ++r)
        {
            if (diagonal)
            {
                for (std::size_t pi = 0; pi < b; ++pi)
                {
                    const std::size_t l = r + pi * M;
                    gd.samples[l] = g.samples[l] / W[l % a];
                }
                continue;
            }
            Eigen::MatrixXd B = block(r);
            Eigen::VectorXd rhs(static_cast<Eigen::Index>(b));
            for (std::size_t pi = 0; pi < b; ++pi)
            {
                rhs(static_cast<Eigen::Index>(pi)) = g.samples[r + pi * M];
            }
            Eigen::VectorXd x = B.ldlt().solve(rhs);
            for (std::size_t pi = 0; pi < b; ++pi)
            {
                gd.samples[r + pi * M] = x(static_cast<Eigen::Index>(pi));
            }
        }
        return gd;
    }

    ComplexGrid dgt(std::span<const cplx> f, const Window& g, const GaborParams& p) { return analyze(f, g, p); }

    ComplexGrid dgt(std::span<const double> f, const Window& g, const GaborParams& p) { return analyze(f, g, p); }

    std::vector<cplx> idgt(const ComplexGrid& c, const Window& gd, const GaborParams& p)
    {
        if (c.rows() != p.M() || c.cols() != p.N())
        {
            throw DimensionError("idgt: coefficient grid " + std::to_string(c.rows()) + "x" +
                                 std::to_string(c.cols()) + " does not match M x N = " + std::to_string(p.M()) +
                                 "x" + std::to_string(p.N()));
        }
        check_window(gd, p, "idgt");
        const std::size_t L = p.L();
        const std::size_t M = p.M();
        const auto [lo, hi] = nonzero_offsets(gd.samples);

        std::vector<cplx> f(L, cplx{});
        std::vector<cplx> buf(M);
        for (std::size_t n = 0; n < p.N(); ++n)
        {
            const auto col = c.column(n);
            std::copy(col.begin(), col.end(), buf.begin());
            detail::fft_backward(buf);
            std::size_t ig = wrap(lo, L);
            std::size_t im = wrap(lo, M);
            std::size_t il = wrap(static_cast<std::ptrdiff_t>(n * p.a()) + lo, L);
            for (std::ptrdiff_t j = lo; j <= hi; ++j)
            {
                const double w = gd.samples[ig];
                if (w != 0.0)
                {
                    f[il] += w * buf[im];
                }
                ig = ig + 1 == L ? 0 : ig + 1;
                im = im + 1 == M ? 0 : im + 1;
                il = il + 1 == L ? 0 : il + 1;
            }
        }
        return f;
    }

    std::vector<double> idgt_real(const ComplexGrid& c, const Window& gd, const GaborParams& p)
    {
        const auto f = idgt(c, gd, p);
        std::vector<double> out(f.size());
        std::transform(f.begin(), f.end(), out.begin(), [](const cplx& v) { return v.real(); });
        return out;
    }

    ComplexGrid project(const ComplexGrid& c, const Window& g, const Window& gd, const GaborParams& p,
                        bool real_signal)
    {
        if (real_signal)
        {
            const auto f = idgt_real(c, gd, p);
            return dgt(std::span<const double>(f), g, p);
        }
        const auto f = idgt(c, gd, p);
        return dgt(std::span<const cplx>(f), g, p);
    }

    ComplexGrid expand_conjugate(const ComplexGrid& half, std::size_t M)
    {
        if (half.rows() != M / 2 + 1)
        {
            throw DimensionError("expand_conjugate: expected " + std::to_string(M / 2 + 1) + " rows, got " +
                                 std::to_string(half.rows()));
        }
        ComplexGrid full(M, half.cols());
        for (std::size_t n = 0; n < half.cols(); ++n)
        {
            for (std::size_t m = 0; m < half.rows(); ++m)
            {
                full(m, n) = half(m, n);
            }
            full(0, n) = cplx(half(0, n).real(), 0.0);
            if (M % 2 == 0)
            {
                full(M / 2, n) = cplx(half(M / 2, n).real(), 0.0);
            }
            for (std::size_t m = 1; m < half.rows(); ++m)
            {
                if (M - m != m)
                {
                    full(M - m, n) = std::conj(half(m, n));
                }
            }
        }
        return full;
    }

    RealGrid expand_symmetric(const RealGrid& half, std::size_t M)
    {
        if (half.rows() != M / 2 + 1)
        {
            throw DimensionError("expand_symmetric: expected " + std::to_string(M / 2 + 1) + " rows, got " +
                                 std::to_string(half.rows()));
        }
        RealGrid full(M, half.cols());
        for (std::size_t n = 0; n < half.cols(); ++n)
        {
            for (std::size_t m = 0; m < half.rows(); ++m)
            {
                full(m, n) = half(m, n);
                if (m > 0 && M - m != m)
                {
                    full(M - m, n) = half(m, n);
                }
            }
        }
        return full;
    }

}  // namespace pghi
