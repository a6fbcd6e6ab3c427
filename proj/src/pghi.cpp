#include "pghi/pghi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <stdexcept>

namespace pghi
{
    namespace
    {
        constexpr double kTwoPi = 2.0 * std::numbers::pi;

        struct PopsLater
        {
            bool operator()(const HeapEntry& a, const HeapEntry& b) const noexcept { return pops_after(a, b); }
        };

        void check_inputs(const RealGrid& s, const PhaseGradient& grad, double tol)
        {
            require_same_shape(s, grad.fgrad, "heap_integrate");
            require_same_shape(s, grad.tgrad, "heap_integrate");
            if (!(tol > 0.0 && tol < 1.0))
            {
                throw std::invalid_argument("heap_integrate: tol must lie in (0, 1)");
            }
        }

        PhaseEstimate integrate(const RealGrid& s, const PhaseGradient& grad, double tol, const KnownPhaseMask* known,
                                std::uint64_t seed, const PopObserver& observer)
        {
            check_inputs(s, grad, tol);
            const std::size_t rows = s.rows();
            const std::size_t cols = s.cols();
            if (known)
            {
                require_same_shape(s, known->mask, "heap_integrate_masked");
                require_same_shape(s, known->phase, "heap_integrate_masked");
            }

            const double peak = s.empty() ? 0.0 : *std::max_element(s.data().begin(), s.data().end());
            const double threshold = tol * peak;
            auto above = [&](std::size_t m, std::size_t n) { return s(m, n) > threshold; };
            auto is_known = [&](std::size_t m, std::size_t n) { return known && known->mask(m, n) != 0; };

            PhaseEstimate est{uniform_phase_grid(rows, cols, seed), Grid<CellOrigin>(rows, cols, CellOrigin::random)};

            // Cells still waiting for a phase (the set I of the algorithm).
            MaskGrid pending(rows, cols, 0);
            std::vector<HeapEntry> order;
            for (std::size_t n = 0; n < cols; ++n)
            {
                for (std::size_t m = 0; m < rows; ++m)
                {
                    if (is_known(m, n))
                    {
                        const double ph = known->phase(m, n);
                        if (!std::isfinite(ph))
                        {
                            throw std::invalid_argument("heap_integrate_masked: known phase must be finite");
                        }
                        est.phase(m, n) = ph;
                        est.origin(m, n) = CellOrigin::known;
                    }
                    else if (above(m, n))
                    {
                        pending(m, n) = 1;
                        order.push_back({s(m, n), static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)});
                    }
                }
            }
            std::size_t remaining = order.size();
            std::sort(order.begin(), order.end(), [](const HeapEntry& x, const HeapEntry& y) { return pops_after(y, x); });

            std::priority_queue<HeapEntry, std::vector<HeapEntry>, PopsLater> heap;

            if (known)
            {
                for (std::size_t n = 0; n < cols; ++n)
                {
                    for (std::size_t m = 0; m < rows; ++m)
                    {
                        if (!is_known(m, n) || !above(m, n))
                        {
                            continue;
                        }
                        const bool border = (m + 1 < rows && !is_known(m + 1, n)) || (m > 0 && !is_known(m - 1, n)) ||
                                            (n + 1 < cols && !is_known(m, n + 1)) || (n > 0 && !is_known(m, n - 1));
                        if (border)
                        {
                            heap.push({s(m, n), static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)});
                        }
                    }
                }
            }

            const auto& fg = grad.fgrad;
            const auto& tg = grad.tgrad;
            auto visit = [&](std::size_t m, std::size_t n, double value) {
                est.phase(m, n) = value;
                est.origin(m, n) = CellOrigin::integrated;
                pending(m, n) = 0;
                --remaining;
                heap.push({s(m, n), static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)});
            };

            std::size_t next_seed = 0;
            while (remaining > 0)
            {
                if (heap.empty())
                {
                    while (!pending(order[next_seed].m, order[next_seed].n))
                    {
                        ++next_seed;
                    }
                    const HeapEntry& top = order[next_seed];
                    est.phase(top.m, top.n) = 0.0;
                    est.origin(top.m, top.n) = CellOrigin::integrated;
                    pending(top.m, top.n) = 0;
                    --remaining;
                    heap.push(top);
                }
                while (!heap.empty())
                {
                    const HeapEntry cur = heap.top();
                    heap.pop();
                    if (observer)
                    {
                        observer(cur);
                    }
                    const std::size_t m = cur.m;
                    const std::size_t n = cur.n;
                    const double ph = est.phase(m, n);
                    if (m + 1 < rows && pending(m + 1, n))
                    {
                        visit(m + 1, n, ph + 0.5 * (fg(m, n) + fg(m + 1, n)));
                    }
                    if (m > 0 && pending(m - 1, n))
                    {
                        visit(m - 1, n, ph - 0.5 * (fg(m, n) + fg(m - 1, n)));
                    }
                    if (n + 1 < cols && pending(m, n + 1))
                    {
                        visit(m, n + 1, ph + 0.5 * (tg(m, n) + tg(m, n + 1)));
                    }
                    if (n > 0 && pending(m, n - 1))
                    {
                        visit(m, n - 1, ph - 0.5 * (tg(m, n) + tg(m, n - 1)));
                    }
                }
            }
            return est;
        }
    }  // namespace

    bool pops_after(const HeapEntry& a, const HeapEntry& b) noexcept
    {
        if (a.magnitude_key != b.magnitude_key)
        {
            return a.magnitude_key < b.magnitude_key;
        }
        if (a.n != b.n)
        {
            return a.n > b.n;
        }
        return a.m > b.m;
    }

    MaskGrid PhaseEstimate::random_set() const
    {
        MaskGrid out(origin.rows(), origin.cols(), 0);
        for (std::size_t i = 0; i < origin.size(); ++i)
        {
            out.data()[i] = origin.data()[i] == CellOrigin::random ? 1 : 0;
        }
        return out;
    }

    MaskGrid PhaseEstimate::integrated_set() const
    {
        MaskGrid out(origin.rows(), origin.cols(), 0);
        for (std::size_t i = 0; i < origin.size(); ++i)
        {
            out.data()[i] = origin.data()[i] == CellOrigin::integrated ? 1 : 0;
        }
        return out;
    }

    std::size_t PhaseEstimate::count(CellOrigin o) const
    {
        return static_cast<std::size_t>(std::count(origin.data().begin(), origin.data().end(), o));
    }

    PhaseEstimate heap_integrate(const RealGrid& s, const PhaseGradient& grad, double tol, std::uint64_t seed,
                                 const PopObserver& observer)
    {
        return integrate(s, grad, tol, nullptr, seed, observer);
    }

    PhaseEstimate heap_integrate_masked(const RealGrid& s, const PhaseGradient& grad, double tol,
                                        const KnownPhaseMask& known, std::uint64_t seed, const PopObserver& observer)
    {
        return integrate(s, grad, tol, &known, seed, observer);
    }

    PhaseEstimate pghi_two_pass(const RealGrid& s, const PhaseGradient& grad, double tol1, double tol2,
                                std::uint64_t seed)
    {
        if (tol1 < tol2)
        {
            throw std::invalid_argument("pghi_two_pass: tol1 must not be smaller than tol2");
        }
        PhaseEstimate first = heap_integrate(s, grad, tol1, seed);
        KnownPhaseMask known{first.integrated_set(), first.phase};
        // Same seed: cells random in both passes keep identical values.
        PhaseEstimate second = heap_integrate_masked(s, grad, tol2, known, seed);
        for (auto& o : second.origin.data())
        {
            if (o == CellOrigin::known)
            {
                o = CellOrigin::integrated;
            }
        }
        return second;
    }

    std::vector<cplx> synthesize(const RealGrid& s, const RealGrid& phase, const Window& gd, const GaborParams& p,
                                 bool real_output)
    {
        require_same_shape(s, phase, "synthesize");
        const ComplexGrid c = polar(s, phase);
        if (!real_output)
        {
            return idgt(c, gd, p);
        }
        const auto f = idgt_real(expand_conjugate(c, p.M()), gd, p);
        return {f.begin(), f.end()};
    }

    std::vector<double> synthesize_real(const RealGrid& s, const RealGrid& phase, const Window& gd,
                                        const GaborParams& p)
    {
        require_same_shape(s, phase, "synthesize");
        return idgt_real(expand_conjugate(polar(s, phase), p.M()), gd, p);
    }

    PhaseEstimate pghi(const RealGrid& s, const GaborParams& p, double gamma, double tol1, double tol2,
                       std::uint64_t seed)
    {
        const double peak = s.empty() ? 0.0 : *std::max_element(s.data().begin(), s.data().end());
        if (!(peak > 0.0))
        {
            PhaseGradient flat{RealGrid(s.rows(), s.cols()), RealGrid(s.rows(), s.cols())};
            return pghi_two_pass(s, flat, tol1, tol2, seed);
        }
        RealGrid unit = s;
        for (auto& v : unit.data())
        {
            v /= peak;
        }
        const auto grad = scaled_phase_gradient(log_magnitude(unit), p, gamma);
        return pghi_two_pass(unit, grad, tol1, tol2, seed);
    }

    RealGrid uniform_phase_grid(std::size_t rows, std::size_t cols, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        RealGrid out(rows, cols);
        for (auto& v : out.data())
        {
            // 53 high bits -> [0, 1); std::uniform_real_distribution is
            // implementation-defined and would make outputs non-portable.
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            v = kTwoPi * u;
        }
        return out;
    }

    double principal_value(double x) noexcept
    {
        double r = std::remainder(x, kTwoPi);
        if (r <= -std::numbers::pi)
        {
            r += kTwoPi;
        }
        return r;
    }

}  // namespace pghi
