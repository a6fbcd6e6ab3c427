#pragma once

#include "pghi/gabor.hpp"
#include "pghi/grid.hpp"

#include <span>

namespace pghi
{
    /// dB value reported when an error is exactly zero.
    inline constexpr double kDbFloor = -400.0;

    struct ErrorValue
    {
        double ratio = 0.0;
        double db = kDbFloor;
    };

    struct MetricReport
    {
        double E = 0.0;
        double E_dB = kDbFloor;
        double C = 0.0;
        double C_dB = kDbFloor;
        double inconsistency = 0.0;
    };

    /// 20 log10(x), or kDbFloor for x == 0.
    double to_db(double ratio) noexcept;

    /// E = ||x - y|| / ||x||. Throws std::invalid_argument on zero ||x|| or
    /// size mismatch.
    ErrorValue relative_error(std::span<const double> x, std::span<const double> y);
    ErrorValue relative_error(std::span<const cplx> x, std::span<const cplx> y);
    ErrorValue relative_error(const RealGrid& x, const RealGrid& y);
    ErrorValue relative_error(const ComplexGrid& x, const ComplexGrid& y);

    /// C = E(s, |P c_hat|). Half-spectrum inputs (M/2 + 1 rows) are expanded
    /// to the full grid first and projected as real signals.
    ErrorValue spectral_convergence(const RealGrid& s, const ComplexGrid& c_hat, const Window& g, const Window& gd,
                                    const GaborParams& p);

    /// E(c_hat, P c_hat)^2.
    double inconsistency(const ComplexGrid& c_hat, const Window& g, const Window& gd, const GaborParams& p);

}  // namespace pghi
