#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace pghi
{
    /// File-level failure: unreadable/unwritable file, malformed or
    /// unsupported container.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct Audio
    {
        /// First channel, scaled to [-1, 1].
        std::vector<double> samples;
        std::uint32_t sample_rate = 0;
        /// Channel count of the source file.
        std::uint16_t channels = 1;
    };

    /// Reads RIFF/WAVE PCM 16-bit or IEEE float 32-bit. Multichannel files
    /// yield their first channel. max_seconds > 0 truncates longer audio.
    Audio load_wav(const std::filesystem::path& path, double max_seconds = 0.0);

    /// Writes mono PCM 16-bit; samples are clipped to [-1, 1].
    void save_wav(const std::filesystem::path& path, const std::vector<double>& samples, std::uint32_t sample_rate);

    /// Mono IEEE float 32-bit, for test fixtures and lossless intermediates.
    void save_wav_float(const std::filesystem::path& path, const std::vector<double>& samples,
                        std::uint32_t sample_rate, std::uint16_t channels = 1);

}  // namespace pghi
