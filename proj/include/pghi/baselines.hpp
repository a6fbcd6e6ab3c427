#pragma once

#include "pghi/gabor.hpp"
#include "pghi/grid.hpp"
#include "pghi/pghi.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pghi
{
    /// Single pass spectrogram inversion: frame by frame, every magnitude
    /// peak advances its phase by 2 pi a m0 / M (m0 = quadratically
    /// interpolated peak bin) and the bins down to the neighbouring valleys
    /// are locked to the peak phase. Works on full or half grids; neighbours
    /// of the edge rows wrap (full) or reflect (half). Bins that belong to no
    /// peak advance at their own centre frequency.
    PhaseEstimate spsi(const RealGrid& s, const GaborParams& p);

    struct IterTrace
    {
        /// Spectral convergence (linear) after each iteration.
        std::vector<double> convergence;
        std::vector<double> seconds;

        std::size_t size() const noexcept { return convergence.size(); }
        std::vector<double> convergence_db() const;
    };

    enum class GlaInit
    {
        zero,
        random,
        warm
    };

    struct GlaConfig
    {
        std::size_t max_iter = 100;
        /// Momentum; 0 reduces the fast variant to plain Griffin-Lim.
        double alpha = 0.0;
        GlaInit init = GlaInit::zero;
        std::uint64_t seed = kDefaultSeed;
        /// Initial phase for GlaInit::warm, same shape as s.
        std::optional<RealGrid> warm_phase;
        /// Restrict the projection to real signals.
        bool real_signal = false;
    };

    struct GlaResult
    {
        PhaseEstimate estimate;
        IterTrace trace;
        /// Final coefficients s * exp(i phase) on the full M-row grid.
        ComplexGrid coefficients;
    };

    /// Griffin-Lim: c <- s * exp(i arg(P c)) with P = dgt(idgt(., gd), g).
    /// `s` is the full M-row magnitude. cfg.alpha is ignored.
    GlaResult gla(const RealGrid& s, const Window& g, const Window& gd, const GaborParams& p, const GlaConfig& cfg);

    /// Fast Griffin-Lim: t_k = P c_k, c_{k+1} = s * exp(i arg(t_k + alpha (t_k - t_{k-1}))),
    /// t_{-1} = t_0.
    GlaResult fgla(const RealGrid& s, const Window& g, const Window& gd, const GaborParams& p, const GlaConfig& cfg);

}  // namespace pghi
