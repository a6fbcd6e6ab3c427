#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pghi::corpus
{
    struct Clip
    {
        std::string name;
        std::uint32_t sample_rate = 0;
        std::vector<double> samples;
    };

    /// Glottal pulse train through three formant resonators. f0 glides
    /// linearly from f0_start to f0_end; vowels change every `syllable` s.
    std::vector<double> voiced_speech(std::uint32_t rate, double seconds, double f0_start, double f0_end,
                                      std::uint64_t seed);

    /// Harmonic chirp with a formant-like spectral envelope; the Fig. 1
    /// style "spoken word" stand-in at short lengths.
    std::vector<double> speech_chirp(std::size_t length, std::uint32_t rate, std::uint64_t seed);

    /// Stationary tone plus a single click; the two-component test signal.
    std::vector<double> tone_and_impulse(std::size_t length, double tone_cycles_per_sample, std::size_t click_at);

    /// The fixed desk-scale corpus: five 16 kHz speech-like clips and five
    /// 44.1 kHz music-like clips, each under five seconds.
    std::vector<Clip> speech_clips();
    std::vector<Clip> music_clips();

    /// Writes speech/*.wav and music/*.wav (float32) below `dir`.
    void write_corpus(const std::filesystem::path& dir);

}  // namespace pghi::corpus
