#include "pghi/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace pghi
{
    namespace
    {
        template <typename T> ErrorValue relative(std::span<const T> x, std::span<const T> y)
        {
            if (x.size() != y.size())
            {
                throw std::invalid_argument("relative_error: size mismatch");
            }
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                num += std::norm(x[i] - y[i]);
                den += std::norm(x[i]);
            }
            if (!(den > 0.0))
            {
                throw std::invalid_argument("relative_error: reference has zero norm");
            }
            const double e = std::sqrt(num / den);
            return {e, to_db(e)};
        }

        bool is_half(const RealGrid& s, const GaborParams& p) { return s.rows() != p.M() && s.rows() == p.half_M(); }
    }  // namespace

    double to_db(double ratio) noexcept { return ratio > 0.0 ? 20.0 * std::log10(ratio) : kDbFloor; }

    ErrorValue relative_error(std::span<const double> x, std::span<const double> y) { return relative(x, y); }

    ErrorValue relative_error(std::span<const cplx> x, std::span<const cplx> y) { return relative(x, y); }

    ErrorValue relative_error(const RealGrid& x, const RealGrid& y)
    {
        require_same_shape(x, y, "relative_error");
        return relative(std::span<const double>(x.data()), std::span<const double>(y.data()));
    }

    ErrorValue relative_error(const ComplexGrid& x, const ComplexGrid& y)
    {
        require_same_shape(x, y, "relative_error");
        return relative(std::span<const cplx>(x.data()), std::span<const cplx>(y.data()));
    }

    ErrorValue spectral_convergence(const RealGrid& s, const ComplexGrid& c_hat, const Window& g, const Window& gd,
                                    const GaborParams& p)
    {
        require_same_shape(s, c_hat, "spectral_convergence");
        if (is_half(s, p))
        {
            const RealGrid s_full = expand_symmetric(s, p.M());
            const ComplexGrid c_full = expand_conjugate(c_hat, p.M());
            return relative_error(s_full, magnitude(project(c_full, g, gd, p, true)));
        }
        return relative_error(s, magnitude(project(c_hat, g, gd, p, false)));
    }

    double inconsistency(const ComplexGrid& c_hat, const Window& g, const Window& gd, const GaborParams& p)
    {
        const double e = relative_error(c_hat, project(c_hat, g, gd, p, false)).ratio;
        return e * e;
    }

}  // namespace pghi
