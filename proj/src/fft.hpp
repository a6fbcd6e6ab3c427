#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace pghi::detail
{
    /// In-place complex FFT of length in.size(). Unnormalized in both
    /// directions; forward uses exp(-2 pi i k j / n). Plans are cached per
    /// (length, direction) and shared across threads.
    void fft_forward(std::span<std::complex<double>> buf);
    void fft_backward(std::span<std::complex<double>> buf);
}  // namespace pghi::detail
