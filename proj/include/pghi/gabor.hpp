#pragma once

#include "pghi/grid.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pghi
{
    /// Separable lattice of an L-periodic Gabor system: hop `a` in time,
    /// `M` frequency channels. Derived: N = L / a frames, b = L / M.
    class GaborParams
    {
    public:
        GaborParams(std::size_t L, std::size_t a, std::size_t M);

        std::size_t L() const noexcept { return m_L; }
        std::size_t a() const noexcept { return m_a; }
        std::size_t M() const noexcept { return m_M; }
        std::size_t N() const noexcept { return m_L / m_a; }
        std::size_t b() const noexcept { return m_L / m_M; }
        double redundancy() const noexcept { return static_cast<double>(m_M) / static_cast<double>(m_a); }

        /// Number of rows kept for a real signal: floor(M/2) + 1.
        std::size_t half_M() const noexcept { return m_M / 2 + 1; }

        /// Default gamma = lambda * L for the lattice-matched Gaussian
        /// (lambda = aM/L).
        double matched_gamma() const noexcept { return static_cast<double>(m_a) * static_cast<double>(m_M); }

        bool operator==(const GaborParams&) const = default;

    private:
        std::size_t m_L;
        std::size_t m_a;
        std::size_t m_M;
    };

    enum class WindowKind
    {
        gauss,
        truncgauss,
        hann,
        hamming
    };

    WindowKind parse_window_kind(std::string_view name);
    std::string_view to_string(WindowKind kind) noexcept;

    /// Real analysis (or dual) window stored at full length L, centred at
    /// index 0 and wrapped modulo L.
    struct Window
    {
        std::vector<double> samples;
        WindowKind kind = WindowKind::gauss;
        /// Time-frequency ratio of the underlying Gaussian (0 for cosine windows).
        double lambda = 0.0;
        /// Truncation / nominal length in samples (L for the full Gaussian).
        std::size_t support = 0;

        std::size_t length() const noexcept { return samples.size(); }
    };

    /// Unnormalized discretized, periodized Gaussian
    /// (lambda L / 2)^(-1/4) * sum_k exp(-pi (l + kL)^2 / (lambda L)), summed
    /// over k in [k_min, k_max].
    std::vector<double> periodized_gaussian(std::size_t L, double lambda, int k_min = -1, int k_max = 0);

    /// Width in samples of a Gaussian with lambda*L = gamma at relative height h.
    double gaussian_width(double gamma, double h);

    /// gamma = lambda * L of the Gaussian whose width at relative height h is w.
    double gamma_from_width(double width, double h);

    /// gamma = lambda * L of the Gaussian that models window g. Gaussian kinds
    /// return their own lambda * L; other windows get the least-squares fit
    /// of exp(-pi x^2 / gamma) to their samples (about 0.2562 s^2 for Hann
    /// and 0.2977 s^2 for Hamming of support s).
    double window_gamma(const Window& g);

    /// Peak-normalized (g(0) = 1) window of length p.L().
    ///
    /// Gaussian kinds use lambda directly; truncgauss additionally multiplies
    /// by a centred gate of `support` samples. Cosine windows are periodic
    /// (DFT-even) of length `support`. For even `support` the sample at
    /// offset -support/2 is split in half between offsets -support/2 and
    /// +support/2 so the window stays symmetric around index 0.
    Window make_window(WindowKind kind, const GaborParams& p, std::size_t support, double lambda);

    /// Canonical dual window (F_g F_g^*)^{-1} g. Throws NumericalError when
    /// the frame operator is singular (min eigenvalue < 1e-10 * max).
    Window canonical_dual(const Window& g, const GaborParams& p);

    /// Discrete Gabor transform with the frame-centred phase convention
    /// c(m,n) = sum_l f(l) conj(g(l - na)) exp(-2 pi i m (l - na) / M).
    ComplexGrid dgt(std::span<const cplx> f, const Window& g, const GaborParams& p);
    ComplexGrid dgt(std::span<const double> f, const Window& g, const GaborParams& p);

    /// Inverse transform (synthesis) with window gd, same phase convention.
    std::vector<cplx> idgt(const ComplexGrid& c, const Window& gd, const GaborParams& p);

    /// Real part of idgt, for coefficient grids of real signals.
    std::vector<double> idgt_real(const ComplexGrid& c, const Window& gd, const GaborParams& p);

    /// Orthogonal projection onto consistent coefficients: dgt(idgt(c, gd), g).
    /// With real_signal the intermediate signal is restricted to its real part.
    ComplexGrid project(const ComplexGrid& c, const Window& g, const Window& gd, const GaborParams& p,
                        bool real_signal = false);

}  // namespace pghi
