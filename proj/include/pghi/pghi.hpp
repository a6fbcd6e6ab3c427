#pragma once

#include "pghi/gabor.hpp"
#include "pghi/grid.hpp"
#include "pghi/phase_gradient.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace pghi
{
    /// How a cell of a phase estimate obtained its value.
    enum class CellOrigin : unsigned char
    {
        random = 0,
        integrated = 1,
        known = 2
    };

    /// Reconstructed phase. Values are unwrapped (accumulated) radians;
    /// wrap with principal_value() before export.
    struct PhaseEstimate
    {
        RealGrid phase;
        Grid<CellOrigin> origin;

        MaskGrid random_set() const;
        MaskGrid integrated_set() const;
        std::size_t count(CellOrigin o) const;
    };

    /// Cells whose phase is already known (Alg. 2 style initialization).
    struct KnownPhaseMask
    {
        MaskGrid mask;
        RealGrid phase;
    };

    /// One heap slot: cells pop in non-increasing magnitude order, equal
    /// magnitudes by ascending (n, m).
    struct HeapEntry
    {
        double magnitude_key = 0.0;
        std::uint32_t m = 0;
        std::uint32_t n = 0;
    };

    /// Strict "a pops after b" ordering used by the integration heap.
    bool pops_after(const HeapEntry& a, const HeapEntry& b) noexcept;

    inline constexpr std::uint64_t kDefaultSeed = 20170301;
    inline constexpr double kDefaultTol1 = 1e-1;
    inline constexpr double kDefaultTol2 = 1e-10;

    /// Optional hook receiving cells in the order they leave the heap.
    using PopObserver = std::function<void(const HeapEntry&)>;

    /// Phase gradient heap integration. Cells with s > tol * max(s) are
    /// integrated from zero-phase seeds placed at each island's maximum,
    /// using trapezoidal steps along the gradient; all other cells receive
    /// i.i.d. uniform phase in [0, 2 pi) drawn from `seed`.
    PhaseEstimate heap_integrate(const RealGrid& s, const PhaseGradient& grad, double tol, std::uint64_t seed,
                                 const PopObserver& observer = {});

    /// As heap_integrate, but cells in `known.mask` keep their supplied phase
    /// (even below tol) and known cells bordering unknown ones start in the
    /// heap. Known cells are never overwritten.
    PhaseEstimate heap_integrate_masked(const RealGrid& s, const PhaseGradient& grad, double tol,
                                        const KnownPhaseMask& known, std::uint64_t seed,
                                        const PopObserver& observer = {});

    /// Coarse pass at tol1, then a masked pass at tol2 seeded with the cells
    /// integrated (not randomized) by the first pass. Requires tol1 >= tol2.
    PhaseEstimate pghi_two_pass(const RealGrid& s, const PhaseGradient& grad, double tol1, double tol2,
                                std::uint64_t seed);

    /// Magnitude + phase to signal. With real_output the grids hold rows
    /// 0..M/2 of a real signal; the negative frequencies are filled in as
    /// conjugate mirrors before synthesis and the result is real.
    std::vector<cplx> synthesize(const RealGrid& s, const RealGrid& phase, const Window& gd, const GaborParams& p,
                                 bool real_output);

    /// synthesize(..., real_output = true) returning the real samples.
    std::vector<double> synthesize_real(const RealGrid& s, const RealGrid& phase, const Window& gd,
                                        const GaborParams& p);

    /// Convenience pipeline: magnitude -> log -> gradient -> two-pass PGHI.
    /// The magnitude is normalized to unit peak first, so scaling it by a
    /// power of two leaves the output bit-identical.
    PhaseEstimate pghi(const RealGrid& s, const GaborParams& p, double gamma, double tol1 = kDefaultTol1,
                       double tol2 = kDefaultTol2, std::uint64_t seed = kDefaultSeed);

    /// Uniform [0, 2 pi) phases; a cell's value depends only on the seed and
    /// its storage position.
    RealGrid uniform_phase_grid(std::size_t rows, std::size_t cols, std::uint64_t seed);

    /// Wrap to (-pi, pi].
    double principal_value(double x) noexcept;

}  // namespace pghi
