#pragma once

#include "pghi/gabor.hpp"
#include "pghi/grid.hpp"

namespace pghi
{
    /// Floored natural log of a magnitude grid.
    struct LogMagnitude
    {
        RealGrid values;
        /// Relative floor that was applied (ratio to the maximum magnitude).
        double rel_floor = 0.0;
    };

    /// Phase derivatives pre-scaled by the lattice steps: `fgrad` is the
    /// phase increment per frequency-bin step (in m), `tgrad` per time-frame
    /// step (in n).
    struct PhaseGradient
    {
        RealGrid fgrad;
        RealGrid tgrad;
    };

    inline constexpr double kDefaultLogFloor = 1e-10;

    /// log(max(s, rel_floor * max(s))). Throws std::invalid_argument for an
    /// all-zero grid, negative entries or rel_floor outside (0, 1).
    LogMagnitude log_magnitude(const RealGrid& s, double rel_floor = kDefaultLogFloor);

    /// Gradient estimate from the log-magnitude of a Gaussian-window DGT:
    ///   fgrad = -(gamma / (aM)) * Dt slog
    ///   tgrad =  (aM / gamma) * Dw slog + 2 pi a m / M
    /// using unit-step central differences. Time wraps periodically. In
    /// frequency a full grid wraps; a half grid (rows 0..M/2 of a real
    /// signal) is reflected at its first and last row, which reproduces the
    /// full-grid result exactly.
    ///
    /// gamma is lambda * L of the Gaussian the window is modelled by; the
    /// lattice-matched choice gamma = aM makes both prefactors 1.
    PhaseGradient scaled_phase_gradient(const LogMagnitude& slog, const GaborParams& p, double gamma,
                                        Spectrum spectrum);

    /// Shorthand: infer the spectrum layout from the row count.
    PhaseGradient scaled_phase_gradient(const LogMagnitude& slog, const GaborParams& p, double gamma);

}  // namespace pghi
