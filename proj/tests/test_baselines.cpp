#include "catch_amalgamated.hpp"

#include "pghi/baselines.hpp"
#include "pghi/gabor.hpp"
#include "pghi/metrics.hpp"
#include "pghi/pghi.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace pghi;

namespace
{
    constexpr double kPi = std::numbers::pi;

    struct Setup
    {
        GaborParams p;
        Window g;
        Window gd;

        explicit Setup(const GaborParams& params)
            : p(params), g(make_window(WindowKind::gauss, p, p.L(), p.matched_gamma() / p.L())), gd(canonical_dual(g, p))
        {
        }
    };

    std::vector<double> noise(std::size_t L, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> d;
        std::vector<double> f(L);
        for (auto& v : f)
        {
            v = d(rng);
        }
        return f;
    }

    /// Decaying two-tone signal: structured enough for GLA to make progress.
    std::vector<double> two_tones(std::size_t L)
    {
        std::vector<double> f(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            const double t = static_cast<double>(l);
            f[l] = std::exp(-t / 900.0) * std::sin(2.0 * kPi * 0.061 * t) + 0.5 * std::sin(2.0 * kPi * 0.173 * t);
        }
        return f;
    }

    double c_db(const RealGrid& s, const ComplexGrid& c, const Setup& su)
    {
        return spectral_convergence(s, c, su.g, su.gd, su.p).db;
    }
}  // namespace

TEST_CASE("spsi advances a tone peak by 2 pi a m0 / M")
{
    const Setup su(GaborParams(2048, 32, 256));
    const std::size_t m0 = 24;
    std::vector<double> f(su.p.L());
    for (std::size_t l = 0; l < f.size(); ++l)
    {
        f[l] = std::cos(2.0 * kPi * static_cast<double>(m0 * l % 256) / 256.0);
    }
    const auto s = half_rows(magnitude(dgt(f, su.g, su.p)));
    const auto est = spsi(s, su.p);
    const double step = 2.0 * kPi * 32.0 * static_cast<double>(m0) / 256.0;
    for (std::size_t n = 1; n < su.p.N(); ++n)
    {
        CHECK(std::abs(principal_value(est.phase(m0, n) - est.phase(m0, n - 1) - step)) < 1e-9);
        // Bins next to the peak share its phase.
        CHECK(est.phase(m0 + 1, n) == est.phase(m0, n));
        CHECK(est.phase(m0 - 1, n) == est.phase(m0, n));
    }
    CHECK(est.count(CellOrigin::random) == 0);
    CHECK(c_db(s, polar(s, est.phase), su) < -60.0);
}

TEST_CASE("spsi interpolates between bins")
{
    const Setup su(GaborParams(2048, 32, 256));
    const double bin = 30.3;
    std::vector<double> f(su.p.L());
    for (std::size_t l = 0; l < f.size(); ++l)
    {
        f[l] = std::cos(2.0 * kPi * bin * static_cast<double>(l) / 256.0);
    }
    const auto s = half_rows(magnitude(dgt(f, su.g, su.p)));
    const auto est = spsi(s, su.p);
    // The Gaussian spectrum is a parabola in log scale: the vertex is exact
    // up to the periodization of the tone.
    const double step = 2.0 * kPi * 32.0 * bin / 256.0;
    for (std::size_t n = 8; n + 8 < su.p.N(); ++n)
    {
        CHECK(std::abs(principal_value(est.phase(30, n) - est.phase(30, n - 1) - step)) < 1e-3);
    }
}

TEST_CASE("spsi leaves silence at zero phase")
{
    const GaborParams p(64, 8, 16);
    const auto est = spsi(RealGrid(9, 8, 0.0), p);
    CHECK(est.phase == RealGrid(9, 8, 0.0));
}

TEST_CASE("spsi is causal")
{
    const Setup su(GaborParams(1024, 32, 128));
    const auto s = half_rows(magnitude(dgt(noise(su.p.L(), 3), su.g, su.p)));
    RealGrid changed = s;
    const std::size_t n0 = 17;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (std::size_t n = n0 + 1; n < s.cols(); ++n)
    {
        for (std::size_t m = 0; m < s.rows(); ++m)
        {
            changed(m, n) = u(rng);
        }
    }
    const auto a = spsi(s, su.p);
    const auto b = spsi(changed, su.p);
    for (std::size_t n = 0; n <= n0; ++n)
    {
        for (std::size_t m = 0; m < s.rows(); ++m)
        {
            CHECK(a.phase(m, n) == b.phase(m, n));
        }
    }
}

TEST_CASE("spsi edge rows: reflected on half grids, wrapped on full grids")
{
    const GaborParams p(64, 8, 16);
    // Half grid decreasing away from DC: DC is a peak with zero frequency,
    // so the whole column stays at phase 0.
    RealGrid half(9, 8);
    for (std::size_t n = 0; n < 8; ++n)
    {
        for (std::size_t m = 0; m < 9; ++m)
        {
            half(m, n) = 1.0 / (1.0 + static_cast<double>(m));
        }
    }
    const auto est = spsi(half, p);
    for (double v : est.phase.data())
    {
        CHECK(v == 0.0);
    }

    // Full grid: bin 15 sits below bin 0 and pulls the interpolated peak
    // to a negative frequency.
    RealGrid full(16, 8, 0.1);
    for (std::size_t n = 0; n < 8; ++n)
    {
        full(0, n) = 1.0;
        full(15, n) = 0.5;
        full(1, n) = 0.4;
    }
    const auto wrapped = spsi(full, p);
    const double l = std::log(0.5);
    const double r = std::log(0.4);
    const double offset = 0.5 * (l - r) / (l + r);
    REQUIRE(offset < 0.0);
    for (std::size_t n = 0; n < 8; ++n)
    {
        const double expected = principal_value(2.0 * kPi * 8.0 / 16.0 * offset * static_cast<double>(n + 1));
        CHECK(wrapped.phase(0, n) == Catch::Approx(expected).margin(1e-12));
        CHECK(wrapped.phase(1, n) == wrapped.phase(0, n));
    }
}

TEST_CASE("spsi validates its input")
{
    const GaborParams p(64, 8, 16);
    CHECK_THROWS_AS(spsi(RealGrid(10, 8, 1.0), p), DimensionError);
    RealGrid neg(9, 8, 1.0);
    neg(3, 3) = -1.0;
    CHECK_THROWS_AS(spsi(neg, p), std::invalid_argument);
}

TEST_CASE("consistent phase is a Griffin-Lim fixed point")
{
    const Setup su(GaborParams(1024, 32, 128));
    const auto c = dgt(noise(su.p.L(), 5), su.g, su.p);
    const auto s = magnitude(c);
    GlaConfig cfg;
    cfg.max_iter = 5;
    cfg.init = GlaInit::warm;
    cfg.warm_phase = phase(c);
    const auto r = gla(s, su.g, su.gd, su.p, cfg);
    REQUIRE(r.trace.size() == 5);
    for (double v : r.trace.convergence)
    {
        CHECK(v < 1e-12);
    }
    CHECK(relative_error(c, r.coefficients).ratio < 1e-12);
}

TEST_CASE("Griffin-Lim convergence never increases")
{
    const Setup su(GaborParams(1024, 32, 128));
    const auto s = magnitude(dgt(two_tones(su.p.L()), su.g, su.p));
    for (bool real : {false, true})
    {
        GlaConfig cfg;
        cfg.max_iter = 40;
        cfg.init = GlaInit::random;
        cfg.real_signal = real;
        const auto r = gla(s, su.g, su.gd, su.p, cfg);
        REQUIRE(r.trace.size() == 40);
        for (std::size_t k = 1; k < r.trace.size(); ++k)
        {
            CHECK(r.trace.convergence[k] <= r.trace.convergence[k - 1] * (1.0 + 1e-12));
        }
        CHECK(r.trace.convergence.back() < r.trace.convergence.front());
        CHECK(r.trace.seconds.size() == 40);
    }
}

TEST_CASE("fast Griffin-Lim with zero momentum is plain Griffin-Lim")
{
    const Setup su(GaborParams(1024, 32, 128));
    const auto s = magnitude(dgt(two_tones(su.p.L()), su.g, su.p));
    GlaConfig cfg;
    cfg.max_iter = 12;
    cfg.alpha = 0.0;
    const auto a = gla(s, su.g, su.gd, su.p, cfg);
    const auto b = fgla(s, su.g, su.gd, su.p, cfg);
    CHECK(a.estimate.phase == b.estimate.phase);
    CHECK(a.trace.convergence == b.trace.convergence);

    // gla ignores alpha altogether.
    cfg.alpha = 0.5;
    CHECK(gla(s, su.g, su.gd, su.p, cfg).estimate.phase == a.estimate.phase);
}

TEST_CASE("momentum speeds up convergence")
{
    const Setup su(GaborParams(2048, 32, 256));
    const auto s = magnitude(dgt(two_tones(su.p.L()), su.g, su.p));
    GlaConfig cfg;
    cfg.max_iter = 60;
    cfg.real_signal = true;
    const auto plain = gla(s, su.g, su.gd, su.p, cfg);
    cfg.alpha = 0.99;
    const auto fast = fgla(s, su.g, su.gd, su.p, cfg);
    CHECK(fast.trace.convergence.back() < plain.trace.convergence.back());
}

TEST_CASE("a pghi warm start beats zero initialization")
{
    const Setup su(GaborParams(2048, 32, 256));
    const auto f = two_tones(su.p.L());
    const auto s = magnitude(dgt(f, su.g, su.p));
    const auto est = pghi::pghi(half_rows(s), su.p, su.p.matched_gamma());
    GlaConfig cfg;
    cfg.max_iter = 20;
    cfg.real_signal = true;
    const auto cold = gla(s, su.g, su.gd, su.p, cfg);
    cfg.init = GlaInit::warm;
    cfg.warm_phase = phase(expand_conjugate(polar(half_rows(s), est.phase), su.p.M()));
    const auto warm = gla(s, su.g, su.gd, su.p, cfg);
    CHECK(warm.trace.convergence.back() < cold.trace.convergence.back());
}

TEST_CASE("zero iterations return the initial phase")
{
    const Setup su(GaborParams(256, 16, 32));
    const auto s = magnitude(dgt(noise(su.p.L(), 8), su.g, su.p));
    GlaConfig cfg;
    cfg.max_iter = 0;
    const auto zero = gla(s, su.g, su.gd, su.p, cfg);
    CHECK(zero.trace.size() == 0);
    CHECK(zero.estimate.phase == RealGrid(32, 16, 0.0));

    cfg.init = GlaInit::random;
    cfg.seed = 42;
    const auto rnd = fgla(s, su.g, su.gd, su.p, cfg);
    const auto expected = uniform_phase_grid(32, 16, 42);
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        CHECK(std::abs(principal_value(rnd.estimate.phase.data()[i] - expected.data()[i])) < 1e-12);
    }
}

TEST_CASE("real-signal projection keeps conjugate symmetry")
{
    const Setup su(GaborParams(512, 16, 64));
    const auto s = magnitude(dgt(noise(su.p.L(), 9), su.g, su.p));
    GlaConfig cfg;
    cfg.max_iter = 3;
    cfg.init = GlaInit::random;
    cfg.real_signal = true;
    const auto r = gla(s, su.g, su.gd, su.p, cfg);
    for (std::size_t n = 0; n < su.p.N(); ++n)
    {
        for (std::size_t m = 1; m < 64; ++m)
        {
            CHECK(std::abs(r.coefficients(64 - m, n) - std::conj(r.coefficients(m, n))) < 1e-9);
        }
    }
}

TEST_CASE("Griffin-Lim validates its configuration")
{
    const Setup su(GaborParams(256, 16, 32));
    const RealGrid s(32, 16, 1.0);
    GlaConfig cfg;
    cfg.max_iter = 1;
    CHECK_THROWS_AS(gla(RealGrid(17, 16, 1.0), su.g, su.gd, su.p, cfg), DimensionError);
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(fgla(s, su.g, su.gd, su.p, cfg), std::invalid_argument);
    cfg.alpha = -0.1;
    CHECK_THROWS_AS(fgla(s, su.g, su.gd, su.p, cfg), std::invalid_argument);
    cfg.alpha = 0.5;
    cfg.init = GlaInit::warm;
    CHECK_THROWS_AS(fgla(s, su.g, su.gd, su.p, cfg), std::invalid_argument);
    cfg.warm_phase = RealGrid(32, 15);
    CHECK_THROWS_AS(fgla(s, su.g, su.gd, su.p, cfg), DimensionError);
}

TEST_CASE("trace converts to dB")
{
    IterTrace t;
    t.convergence = {1.0, 0.1, 0.0};
    const auto db = t.convergence_db();
    CHECK(db[0] == 0.0);
    CHECK(db[1] == Catch::Approx(-20.0));
    CHECK(db[2] == kDbFloor);
}

TEST_CASE("zero-phase Griffin-Lim on a tone decreases for 100 iterations")
{
    const Setup su(GaborParams(1024, 32, 128));
    std::vector<double> f(su.p.L());
    for (std::size_t l = 0; l < f.size(); ++l)
    {
        f[l] = std::cos(2.0 * kPi * 0.1 * static_cast<double>(l));
    }
    const auto s = magnitude(dgt(f, su.g, su.p));
    GlaConfig cfg;
    cfg.real_signal = true;
    const auto r = gla(s, su.g, su.gd, su.p, cfg);
    REQUIRE(r.trace.size() == 100);
    for (std::size_t k = 1; k < r.trace.size(); ++k)
    {
        CHECK(r.trace.convergence[k] <= r.trace.convergence[k - 1] * (1.0 + 1e-12));
    }
}

TEST_CASE("one Griffin-Lim step does not worsen a pghi estimate")
{
    const Setup su(GaborParams(2048, 32, 256));
    const auto s = magnitude(dgt(two_tones(su.p.L()), su.g, su.p));
    const auto h = half_rows(s);
    const auto est = pghi::pghi(h, su.p, su.p.matched_gamma());
    const auto start = expand_conjugate(polar(h, est.phase), su.p.M());
    const double before = spectral_convergence(s, start, su.g, su.gd, su.p).ratio;
    GlaConfig cfg;
    cfg.max_iter = 1;
    cfg.real_signal = true;
    cfg.init = GlaInit::warm;
    cfg.warm_phase = phase(start);
    const auto r = gla(s, su.g, su.gd, su.p, cfg);
    CHECK(r.trace.convergence[0] <= before);
}

TEST_CASE("baselines are magnitude-scale equivariant")
{
    const Setup su(GaborParams(512, 16, 64));
    const auto s = magnitude(dgt(two_tones(su.p.L()), su.g, su.p));
    RealGrid s4 = s;
    for (auto& v : s4.data())
    {
        v *= 4.0;
    }
    // Peak interpolation works on log differences: equal up to rounding.
    const auto p1 = spsi(half_rows(s), su.p).phase;
    const auto p4 = spsi(half_rows(s4), su.p).phase;
    for (std::size_t i = 0; i < p1.size(); ++i)
    {
        CHECK(std::abs(principal_value(p1.data()[i] - p4.data()[i])) < 1e-9);
    }

    GlaConfig cfg;
    cfg.max_iter = 10;
    cfg.alpha = 0.9;
    cfg.init = GlaInit::random;
    const auto a = fgla(s, su.g, su.gd, su.p, cfg);
    const auto b = fgla(s4, su.g, su.gd, su.p, cfg);
    CHECK(a.estimate.phase == b.estimate.phase);
    CHECK(a.trace.convergence == b.trace.convergence);
}
