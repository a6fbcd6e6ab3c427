#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pghi
{
    using cplx = std::complex<double>;

    /// Thrown when grids, signals or parameters do not agree in size.
    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Thrown when a Gabor system is not a (numerically) invertible frame
    /// or some other numerical precondition fails.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Dense time-frequency grid. Column-major: all frequency bins of one
    /// time frame are contiguous, i.e. element (m, n) lives at n * rows + m.
    template <typename T> class Grid
    {
    public:
        Grid() = default;
        Grid(std::size_t rows, std::size_t cols, T fill = T{}) : m_rows(rows), m_cols(cols), m_data(rows * cols, fill) {}

        std::size_t rows() const noexcept { return m_rows; }
        std::size_t cols() const noexcept { return m_cols; }
        std::size_t size() const noexcept { return m_data.size(); }
        bool empty() const noexcept { return m_data.empty(); }

        T& operator()(std::size_t m, std::size_t n) noexcept { return m_data[n * m_rows + m]; }
        const T& operator()(std::size_t m, std::size_t n) const noexcept { return m_data[n * m_rows + m]; }

        std::span<T> column(std::size_t n) noexcept { return {m_data.data() + n * m_rows, m_rows}; }
        std::span<const T> column(std::size_t n) const noexcept { return {m_data.data() + n * m_rows, m_rows}; }

        std::vector<T>& data() noexcept { return m_data; }
        const std::vector<T>& data() const noexcept { return m_data; }

        template <typename U> bool same_shape(const Grid<U>& other) const noexcept
        {
            return m_rows == other.rows() && m_cols == other.cols();
        }

        bool operator==(const Grid&) const = default;

    private:
        std::size_t m_rows = 0;
        std::size_t m_cols = 0;
        std::vector<T> m_data;
    };

    using RealGrid = Grid<double>;
    using ComplexGrid = Grid<cplx>;
    using MaskGrid = Grid<unsigned char>;

    template <typename A, typename B> void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what)
    {
        if (!a.same_shape(b))
        {
            throw DimensionError(std::string(what) + ": grid shapes differ (" + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()) + ")");
        }
    }

    /// Whether a grid carries all M channels or only bins 0..floor(M/2)
    /// of a real signal.
    enum class Spectrum
    {
        full,
        half
    };

    inline RealGrid magnitude(const ComplexGrid& c)
    {
        RealGrid s(c.rows(), c.cols());
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            s.data()[i] = std::abs(c.data()[i]);
        }
        return s;
    }

    inline RealGrid phase(const ComplexGrid& c)
    {
        RealGrid p(c.rows(), c.cols());
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            p.data()[i] = std::arg(c.data()[i]);
        }
        return p;
    }

    /// s * exp(i * phi), elementwise.
    inline ComplexGrid polar(const RealGrid& s, const RealGrid& phi)
    {
        require_same_shape(s, phi, "polar");
        ComplexGrid c(s.rows(), s.cols());
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            c.data()[i] = std::polar(s.data()[i], phi.data()[i]);
        }
        return c;
    }

    /// Keep rows 0..floor(M/2) of a full-spectrum grid.
    template <typename T> Grid<T> half_rows(const Grid<T>& full)
    {
        const std::size_t rows = full.rows() / 2 + 1;
        Grid<T> out(rows, full.cols());
        for (std::size_t n = 0; n < full.cols(); ++n)
        {
            for (std::size_t m = 0; m < rows; ++m)
            {
                out(m, n) = full(m, n);
            }
        }
        return out;
    }

    /// Rebuild the M-row grid of a real signal from its non-negative
    /// frequency rows: c(M - m, n) = conj(c(m, n)). Rows 0 and M/2 (M even)
    /// are forced real.
    ComplexGrid expand_conjugate(const ComplexGrid& half, std::size_t M);

    /// Magnitude counterpart of expand_conjugate.
    RealGrid expand_symmetric(const RealGrid& half, std::size_t M);

}  // namespace pghi
