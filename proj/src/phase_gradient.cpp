#include "pghi/phase_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pghi
{
    namespace
    {
        /// Row of a half grid holding |c(k mod M)|.
        std::size_t mirror(std::size_t k, std::size_t M)
        {
            const std::size_t j = k % M;
            return j <= M / 2 ? j : M - j;
        }
    }  // namespace

    LogMagnitude log_magnitude(const RealGrid& s, double rel_floor)
    {
        if (!(rel_floor > 0.0 && rel_floor < 1.0))
        {
            throw std::invalid_argument("log_magnitude: rel_floor must lie in (0, 1)");
        }
        double peak = 0.0;
        for (double v : s.data())
        {
            if (v < 0.0 || std::isnan(v))
            {
                throw std::invalid_argument("log_magnitude: magnitudes must be non-negative");
            }
            peak = std::max(peak, v);
        }
        if (!(peak > 0.0))
        {
            throw std::invalid_argument("log_magnitude: all-zero magnitude has no reference level");
        }
        const double floor = rel_floor * peak;
        LogMagnitude out{RealGrid(s.rows(), s.cols()), rel_floor};
        std::transform(s.data().begin(), s.data().end(), out.values.data().begin(),
                       [floor](double v) { return std::log(std::max(v, floor)); });
        return out;
    }

    PhaseGradient scaled_phase_gradient(const LogMagnitude& slog, const GaborParams& p, double gamma,
                                        Spectrum spectrum)
    {
        if (!(gamma > 0.0))
        {
            throw std::invalid_argument("scaled_phase_gradient: gamma must be positive");
        }
        const RealGrid& v = slog.values;
        const std::size_t expected_rows = spectrum == Spectrum::full ? p.M() : p.half_M();
        if (v.rows() != expected_rows || v.cols() != p.N())
        {
            throw DimensionError("scaled_phase_gradient: grid " + std::to_string(v.rows()) + "x" +
                                 std::to_string(v.cols()) + " does not match " + std::to_string(expected_rows) +
                                 "x" + std::to_string(p.N()));
        }

        const double aM = static_cast<double>(p.a()) * static_cast<double>(p.M());
        const double fscale = -gamma / aM;
        const double tscale = aM / gamma;
        const double carrier = 2.0 * std::numbers::pi * static_cast<double>(p.a()) / static_cast<double>(p.M());

        const std::size_t rows = v.rows();
        const std::size_t cols = v.cols();
        const std::size_t M = p.M();
        PhaseGradient grad{RealGrid(rows, cols), RealGrid(rows, cols)};

        for (std::size_t n = 0; n < cols; ++n)
        {
            const std::size_t next = (n + 1) % cols;
            const std::size_t prev = (n + cols - 1) % cols;
            for (std::size_t m = 0; m < rows; ++m)
            {
                const double dt = 0.5 * (v(m, next) - v(m, prev));

                double dw = 0.0;
                if (rows > 1)
                {
                    if (spectrum == Spectrum::full)
                    {
                        dw = 0.5 * (v((m + 1) % rows, n) - v((m + rows - 1) % rows, n));
                    }
                    else
                    {
                        // |c(M - m)| = |c(m)| for real signals: reflect to get
                        // exactly the full-grid wrapped difference.
                        dw = 0.5 * (v(mirror(m + 1, M), n) - v(mirror(m + M - 1, M), n));
                    }
                }

                grad.fgrad(m, n) = fscale * dt;
                grad.tgrad(m, n) = tscale * dw + carrier * static_cast<double>(m);
            }
        }
        return grad;
    }

    PhaseGradient scaled_phase_gradient(const LogMagnitude& slog, const GaborParams& p, double gamma)
    {
        const std::size_t rows = slog.values.rows();
        if (rows == p.M())
        {
            return scaled_phase_gradient(slog, p, gamma, Spectrum::full);
        }
        if (rows == p.half_M())
        {
            return scaled_phase_gradient(slog, p, gamma, Spectrum::half);
        }
        throw DimensionError("scaled_phase_gradient: " + std::to_string(rows) + " rows fit neither M = " +
                             std::to_string(p.M()) + " nor M/2 + 1");
    }

}  // namespace pghi
