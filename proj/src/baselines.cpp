#include "pghi/baselines.hpp"

#include "pghi/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pghi
{
    namespace
    {
        constexpr double kTwoPi = 2.0 * std::numbers::pi;

        double safe_log(double v, double floor) { return std::log(std::max(v, floor)); }

        GlaResult run_gla(const RealGrid& s, const Window& g, const Window& gd, const GaborParams& p,
                          const GlaConfig& cfg, double alpha)
        {
            if (s.rows() != p.M() || s.cols() != p.N())
            {
                throw DimensionError("gla: magnitude must be a full " + std::to_string(p.M()) + "x" +
                                     std::to_string(p.N()) + " grid");
            }
            if (!(alpha >= 0.0 && alpha < 1.0))
            {
                throw std::invalid_argument("fgla: alpha must lie in [0, 1)");
            }

            RealGrid init_phase(s.rows(), s.cols(), 0.0);
            switch (cfg.init)
            {
            case GlaInit::zero: break;
            case GlaInit::random: init_phase = uniform_phase_grid(s.rows(), s.cols(), cfg.seed); break;
            case GlaInit::warm:
                if (!cfg.warm_phase)
                {
                    throw std::invalid_argument("gla: warm start needs an initial phase");
                }
                require_same_shape(s, *cfg.warm_phase, "gla");
                init_phase = *cfg.warm_phase;
                break;
            }

            ComplexGrid c = polar(s, init_phase);
            ComplexGrid t = project(c, g, gd, p, cfg.real_signal);
            ComplexGrid t_prev = t;
            IterTrace trace;
            trace.convergence.reserve(cfg.max_iter);
            trace.seconds.reserve(cfg.max_iter);

            for (std::size_t k = 0; k < cfg.max_iter; ++k)
            {
                const auto start = std::chrono::steady_clock::now();
                for (std::size_t i = 0; i < c.size(); ++i)
                {
                    cplx target = t.data()[i];
                    if (alpha != 0.0)
                    {
                        target += alpha * (t.data()[i] - t_prev.data()[i]);
                    }
                    c.data()[i] = std::polar(s.data()[i], std::arg(target));
                }
                if (alpha != 0.0)
                {
                    std::swap(t_prev, t);
                }
                t = project(c, g, gd, p, cfg.real_signal);
                trace.convergence.push_back(relative_error(s, magnitude(t)).ratio);
                trace.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            }

            GlaResult out;
            out.estimate.phase = pghi::phase(c);
            out.estimate.origin = Grid<CellOrigin>(s.rows(), s.cols(), CellOrigin::integrated);
            out.trace = std::move(trace);
            out.coefficients = std::move(c);
            return out;
        }
    }  // namespace

    std::vector<double> IterTrace::convergence_db() const
    {
        std::vector<double> out(convergence.size());
        std::transform(convergence.begin(), convergence.end(), out.begin(), to_db);
        return out;
    }

    PhaseEstimate spsi(const RealGrid& s, const GaborParams& p)
    {
        const std::size_t rows = s.rows();
        const std::size_t cols = s.cols();
        if (rows != p.M() && rows != p.half_M())
        {
            throw DimensionError("spsi: " + std::to_string(rows) + " rows fit neither M nor M/2 + 1");
        }
        for (double v : s.data())
        {
            if (v < 0.0 || std::isnan(v))
            {
                throw std::invalid_argument("spsi: magnitudes must be non-negative");
            }
        }

        const double step = kTwoPi * static_cast<double>(p.a()) / static_cast<double>(p.M());
        // Row holding bin k mod M: full grids wrap, half grids reflect
        // (|c(M - m)| = |c(m)| for real signals).
        const std::size_t M = p.M();
        const bool full = rows == M;
        auto neighbour = [M, full](std::size_t k) {
            const std::size_t j = k % M;
            return full || j <= M / 2 ? j : M - j;
        };
        PhaseEstimate est{RealGrid(rows, cols, 0.0), Grid<CellOrigin>(rows, cols, CellOrigin::integrated)};
        std::vector<double> acc(rows, 0.0);
        std::vector<double> next(rows, 0.0);
        std::vector<unsigned char> assigned(rows, 0);

        for (std::size_t n = 0; n < cols; ++n)
        {
            const auto col = s.column(n);
            std::fill(assigned.begin(), assigned.end(), 0);
            next = acc;

            for (std::size_t m = 0; m < rows; ++m)
            {
                const double below = col[neighbour(m + M - 1)];
                const double above = col[neighbour(m + 1)];
                if (!(col[m] > 0.0 && col[m] > below && col[m] >= above))
                {
                    continue;
                }
                const double floor = col[m] * 1e-12;
                const double left = safe_log(below, floor);
                const double mid = std::log(col[m]);
                const double right = safe_log(above, floor);
                const double curvature = left - 2.0 * mid + right;
                double offset = curvature < 0.0 ? 0.5 * (left - right) / curvature : 0.0;
                offset = std::clamp(offset, -0.5, 0.5);

                const double peak_phase =
                    principal_value(acc[m] + step * (static_cast<double>(m) + offset));
                next[m] = peak_phase;
                assigned[m] = 1;
                // Lock the bins down to the neighbouring valleys.
                for (std::size_t k = m; k-- > 0;)
                {
                    next[k] = peak_phase;
                    assigned[k] = 1;
                    if (k == 0 || col[k - 1] >= col[k])
                    {
                        break;
                    }
                }
                for (std::size_t k = m + 1; k < rows; ++k)
                {
                    next[k] = peak_phase;
                    assigned[k] = 1;
                    if (k + 1 == rows || col[k + 1] >= col[k])
                    {
                        break;
                    }
                }
            }
            for (std::size_t m = 0; m < rows; ++m)
            {
                if (!assigned[m] && col[m] > 0.0)
                {
                    next[m] = principal_value(acc[m] + step * static_cast<double>(m));
                }
                est.phase(m, n) = next[m];
            }
            acc.swap(next);
        }
        return est;
    }

    GlaResult gla(const RealGrid& s, const Window& g, const Window& gd, const GaborParams& p, const GlaConfig& cfg)
    {
        return run_gla(s, g, gd, p, cfg, 0.0);
    }

    GlaResult fgla(const RealGrid& s, const Window& g, const Window& gd, const GaborParams& p, const GlaConfig& cfg)
    {
        return run_gla(s, g, gd, p, cfg, cfg.alpha);
    }

}  // namespace pghi
