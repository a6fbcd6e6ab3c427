#include "pghi/corpus.hpp"

#include "pghi/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace pghi::corpus
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;

        /// Two-pole resonator, unit gain at the centre frequency.
        class Resonator
        {
        public:
            void tune(double freq, double bandwidth, double rate)
            {
                const double r = std::exp(-kPi * bandwidth / rate);
                const double theta = 2.0 * kPi * freq / rate;
                m_a1 = 2.0 * r * std::cos(theta);
                m_a2 = -r * r;
                m_gain = (1.0 - r) * std::sqrt(1.0 - 2.0 * r * std::cos(2.0 * theta) + r * r);
            }

            double operator()(double x)
            {
                const double y = m_gain * x + m_a1 * m_y1 + m_a2 * m_y2;
                m_y2 = m_y1;
                m_y1 = y;
                return y;
            }

        private:
            double m_a1 = 0.0;
            double m_a2 = 0.0;
            double m_gain = 1.0;
            double m_y1 = 0.0;
            double m_y2 = 0.0;
        };

        struct Vowel
        {
            std::array<double, 3> formant;
            std::array<double, 3> bandwidth;
        };

        constexpr std::array<Vowel, 4> kVowels{{
            {{730.0, 1090.0, 2440.0}, {90.0, 110.0, 170.0}},  // a
            {{270.0, 2290.0, 3010.0}, {60.0, 100.0, 120.0}},  // i
            {{300.0, 870.0, 2240.0}, {60.0, 90.0, 130.0}},    // u
            {{530.0, 1840.0, 2480.0}, {70.0, 100.0, 150.0}},  // e
        }};

        void normalize(std::vector<double>& x, double peak = 0.9)
        {
            double m = 0.0;
            for (double v : x)
            {
                m = std::max(m, std::abs(v));
            }
            if (m > 0.0)
            {
                for (auto& v : x)
                {
                    v *= peak / m;
                }
            }
        }

        double smoothstep(double x)
        {
            x = std::clamp(x, 0.0, 1.0);
            return x * x * (3.0 - 2.0 * x);
        }

        /// Noise bursts (fricatives) and short clicks (plosive releases).
        void add_consonants(std::vector<double>& x, std::uint32_t rate, std::uint64_t seed, double level)
        {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> noise;
            Resonator hiss;
            hiss.tune(std::min(4500.0, 0.3 * rate), 2500.0, rate);
            const std::size_t n = x.size();
            const std::size_t bursts = 3;
            for (std::size_t k = 0; k < bursts; ++k)
            {
                const auto start = static_cast<std::size_t>((0.15 + 0.3 * k) * static_cast<double>(n));
                const auto len = static_cast<std::size_t>(0.06 * rate);
                for (std::size_t i = 0; i < len && start + i < n; ++i)
                {
                    const double env = std::sin(kPi * static_cast<double>(i) / static_cast<double>(len));
                    x[start + i] += level * env * hiss(noise(rng));
                }
                const std::size_t click = start + len + static_cast<std::size_t>(0.02 * rate);
                for (std::size_t i = 0; i < 40 && click + i < n; ++i)
                {
                    x[click + i] += 2.0 * level * std::exp(-static_cast<double>(i) / 6.0) * noise(rng);
                }
            }
        }

        std::vector<double> partials(std::uint32_t rate, double seconds, const std::vector<double>& onsets,
                                     const std::vector<double>& fundamentals, double inharmonicity, int count,
                                     double decay, double rolloff, std::uint64_t seed)
        {
            const auto n = static_cast<std::size_t>(seconds * rate);
            std::vector<double> x(n, 0.0);
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> phase0(0.0, 2.0 * kPi);
            std::normal_distribution<double> noise;
            for (std::size_t note = 0; note < onsets.size(); ++note)
            {
                const auto start = static_cast<std::size_t>(onsets[note] * rate);
                const double f0 = fundamentals[note];
                for (int h = 1; h <= count; ++h)
                {
                    const double hf = static_cast<double>(h);
                    const double f = f0 * hf * std::sqrt(1.0 + inharmonicity * hf * hf);
                    if (f > 0.45 * rate)
                    {
                        break;
                    }
                    const double amp = std::pow(hf, -rolloff);
                    const double tau = decay / (1.0 + 0.3 * hf);
                    const double ph = phase0(rng);
                    for (std::size_t i = start; i < n; ++i)
                    {
                        const double t = static_cast<double>(i - start) / rate;
                        x[i] += amp * std::exp(-t / tau) * std::sin(2.0 * kPi * f * t + ph);
                    }
                }
                // Strike transient.
                for (std::size_t i = 0; i < static_cast<std::size_t>(0.004 * rate) && start + i < n; ++i)
                {
                    x[start + i] += 0.3 * std::exp(-static_cast<double>(i) / (0.0008 * rate)) * noise(rng);
                }
            }
            return x;
        }
    }  // namespace

    std::vector<double> voiced_speech(std::uint32_t rate, double seconds, double f0_start, double f0_end,
                                      std::uint64_t seed)
    {
        const auto n = static_cast<std::size_t>(seconds * rate);
        std::vector<double> x(n, 0.0);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> jitter(0.0, 0.004);
        std::normal_distribution<double> breath(0.0, 1.0);

        std::array<Resonator, 3> tract;
        Resonator glottal;
        glottal.tune(0.0, 300.0, rate);
        const double syllable = 0.28;
        double phase = 0.0;
        double period_scale = 1.0;
        double prev_flow = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double t = static_cast<double>(i) / rate;
            const double progress = t / seconds;
            const double f0 = (f0_start + (f0_end - f0_start) * progress) * (1.0 + 0.02 * std::sin(2.0 * kPi * 5.0 * t));
            phase += f0 / rate * period_scale;
            double excitation = 0.0;
            if (phase >= 1.0)
            {
                phase -= 1.0;
                period_scale = 1.0 + jitter(rng);
                excitation = 1.0;
            }
            excitation += 0.01 * breath(rng);

            const auto k = static_cast<std::size_t>(t / syllable);
            const double blend = smoothstep((t - static_cast<double>(k) * syllable) / (0.4 * syllable));
            const Vowel& from = kVowels[(k + kVowels.size() - 1) % kVowels.size()];
            const Vowel& to = kVowels[k % kVowels.size()];
            if (i % 32 == 0)
            {
                for (std::size_t f = 0; f < 3; ++f)
                {
                    tract[f].tune(from.formant[f] + blend * (to.formant[f] - from.formant[f]),
                                  from.bandwidth[f] + blend * (to.bandwidth[f] - from.bandwidth[f]), rate);
                }
            }
            // Lip radiation differentiates the glottal flow (removes DC).
            const double flow = glottal(excitation);
            const double src = flow - prev_flow;
            prev_flow = flow;
            const double y = tract[0](src) + 0.5 * tract[1](src) + 0.25 * tract[2](src);
            // Syllabic amplitude envelope.
            const double env = 0.35 + 0.65 * std::pow(std::sin(kPi * std::fmod(t, syllable) / syllable), 2.0);
            x[i] = env * y;
        }
        normalize(x);
        return x;
    }

    std::vector<double> speech_chirp(std::size_t length, std::uint32_t rate, std::uint64_t seed)
    {
        std::vector<double> x(length, 0.0);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> phase0(0.0, 2.0 * kPi);
        std::array<double, 30> offsets{};
        for (auto& o : offsets)
        {
            o = phase0(rng);
        }
        const double duration = static_cast<double>(length) / rate;
        double phase = 0.0;
        for (std::size_t i = 0; i < length; ++i)
        {
            const double t = static_cast<double>(i) / rate;
            const double f0 = 140.0 + 90.0 * t / duration + 15.0 * std::sin(2.0 * kPi * 6.0 * t);
            phase += 2.0 * kPi * f0 / rate;
            const double env = std::pow(std::sin(kPi * (t + 0.5 / rate) / duration), 2.0);
            double v = 0.0;
            for (std::size_t h = 1; h <= offsets.size(); ++h)
            {
                const double fh = f0 * static_cast<double>(h);
                if (fh > 0.45 * rate)
                {
                    break;
                }
                const double formants = std::exp(-std::pow((fh - 650.0) / 350.0, 2.0)) +
                                        0.6 * std::exp(-std::pow((fh - 1700.0) / 450.0, 2.0)) +
                                        0.3 * std::exp(-std::pow((fh - 2800.0) / 500.0, 2.0));
                v += (0.05 + formants) / std::sqrt(static_cast<double>(h)) *
                     std::sin(static_cast<double>(h) * phase + offsets[h - 1]);
            }
            x[i] = env * v;
        }
        normalize(x);
        return x;
    }

    std::vector<double> tone_and_impulse(std::size_t length, double tone_cycles_per_sample, std::size_t click_at)
    {
        std::vector<double> x(length, 0.0);
        for (std::size_t i = 0; i < length; ++i)
        {
            x[i] = 0.5 * std::cos(2.0 * kPi * tone_cycles_per_sample * static_cast<double>(i));
        }
        if (click_at < length)
        {
            x[click_at] += 1.0;
        }
        return x;
    }

    std::vector<Clip> speech_clips()
    {
        constexpr std::uint32_t rate = 16000;
        std::vector<Clip> clips;
        clips.push_back({"male_vowels", rate, voiced_speech(rate, 2.0, 105.0, 140.0, 11)});
        clips.push_back({"female_vowels", rate, voiced_speech(rate, 2.0, 210.0, 180.0, 12)});

        auto mixed = voiced_speech(rate, 2.0, 120.0, 170.0, 13);
        add_consonants(mixed, rate, 14, 0.15);
        normalize(mixed);
        clips.push_back({"consonants", rate, std::move(mixed)});

        auto breathy = voiced_speech(rate, 1.6, 160.0, 120.0, 15);
        {
            std::mt19937_64 rng(16);
            std::normal_distribution<double> noise;
            Resonator colour;
            colour.tune(1500.0, 2000.0, rate);
            for (auto& v : breathy)
            {
                v += 0.05 * colour(noise(rng));
            }
            normalize(breathy);
        }
        clips.push_back({"breathy", rate, std::move(breathy)});

        clips.push_back({"chirp_word", rate, speech_chirp(24000, rate, 17)});
        return clips;
    }

    std::vector<Clip> music_clips()
    {
        constexpr std::uint32_t rate = 44100;
        std::vector<Clip> clips;

        auto piano = partials(rate, 2.0, {0.05, 0.55, 1.05, 1.3}, {220.0, 277.18, 329.63, 440.0}, 4e-4, 30, 0.9, 1.1, 21);
        normalize(piano);
        clips.push_back({"piano", rate, std::move(piano)});

        auto glock = partials(rate, 2.0, {0.02, 0.3, 0.6, 0.9, 1.2, 1.5}, {1046.5, 1318.5, 1568.0, 2093.0, 1568.0, 1318.5},
                              0.05, 6, 0.6, 0.4, 22);
        normalize(glock);
        clips.push_back({"glockenspiel", rate, std::move(glock)});

        {
            const auto n = static_cast<std::size_t>(1.5 * rate);
            std::vector<double> cast(n, 0.0);
            std::mt19937_64 rng(23);
            std::normal_distribution<double> noise;
            Resonator body;
            body.tune(2200.0, 900.0, rate);
            const std::array<double, 9> hits{0.05, 0.2, 0.28, 0.36, 0.6, 0.75, 0.83, 1.1, 1.3};
            for (double h : hits)
            {
                const auto start = static_cast<std::size_t>(h * rate);
                for (std::size_t i = 0; i < static_cast<std::size_t>(0.03 * rate) && start + i < n; ++i)
                {
                    cast[start + i] += std::exp(-static_cast<double>(i) / (0.003 * rate)) * noise(rng);
                }
            }
            for (auto& v : cast)
            {
                v = body(v);
            }
            normalize(cast);
            clips.push_back({"castanets", rate, std::move(cast)});
        }

        {
            const auto n = static_cast<std::size_t>(2.0 * rate);
            std::vector<double> violin(n, 0.0);
            std::mt19937_64 rng(24);
            std::normal_distribution<double> noise;
            double phase = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double t = static_cast<double>(i) / rate;
                const double f0 = (t < 1.0 ? 392.0 : 440.0) * (1.0 + 0.006 * std::sin(2.0 * kPi * 5.5 * t));
                phase += 2.0 * kPi * f0 / rate;
                double v = 0.0;
                for (int h = 1; h <= 20; ++h)
                {
                    v += std::sin(h * phase) / h;
                }
                const double local = std::fmod(t, 1.0);
                const double env = std::min(1.0, local / 0.08) * std::min(1.0, (1.0 - local) / 0.05);
                violin[i] = env * (v + 0.02 * noise(rng));
            }
            normalize(violin);
            clips.push_back({"violin", rate, std::move(violin)});
        }

        {
            auto chord = partials(rate, 2.0, {0.0, 0.0, 0.0}, {261.63, 329.63, 392.0}, 1e-4, 12, 1.5, 1.0, 25);
            std::mt19937_64 rng(26);
            std::normal_distribution<double> noise;
            const std::array<double, 4> kicks{0.1, 0.6, 1.1, 1.6};
            for (double k : kicks)
            {
                const auto start = static_cast<std::size_t>(k * rate);
                double ph = 0.0;
                for (std::size_t i = 0; i < static_cast<std::size_t>(0.25 * rate) && start + i < chord.size(); ++i)
                {
                    const double t = static_cast<double>(i) / rate;
                    ph += 2.0 * kPi * (50.0 + 120.0 * std::exp(-t / 0.03)) / rate;
                    chord[start + i] += 3.0 * std::exp(-t / 0.12) * std::sin(ph) +
                                        0.8 * std::exp(-t / 0.01) * noise(rng);
                }
            }
            normalize(chord);
            clips.push_back({"chord_drums", rate, std::move(chord)});
        }
        return clips;
    }

    void write_corpus(const std::filesystem::path& dir)
    {
        for (const auto& [sub, clips] : {std::pair{"speech", speech_clips()}, std::pair{"music", music_clips()}})
        {
            const auto target = dir / sub;
            std::filesystem::create_directories(target);
            for (const auto& clip : clips)
            {
                save_wav_float(target / (clip.name + ".wav"), clip.samples, clip.sample_rate);
            }
        }
    }

}  // namespace pghi::corpus
