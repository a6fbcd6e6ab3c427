#include "pghi/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace pghi
{
    namespace
    {
        constexpr std::uint16_t kFormatPcm = 1;
        constexpr std::uint16_t kFormatFloat = 3;
        constexpr std::uint16_t kFormatExtensible = 0xFFFE;

        std::uint16_t read_u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

        std::uint32_t read_u32(const unsigned char* p)
        {
            return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                   (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
        }

        void put_u16(std::vector<unsigned char>& out, std::uint16_t v)
        {
            out.push_back(static_cast<unsigned char>(v & 0xFF));
            out.push_back(static_cast<unsigned char>(v >> 8));
        }

        void put_u32(std::vector<unsigned char>& out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
            {
                out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
            }
        }

        void put_tag(std::vector<unsigned char>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

        std::vector<unsigned char> header(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                                          std::uint16_t bits, std::uint32_t data_bytes)
        {
            std::vector<unsigned char> h;
            h.reserve(44);
            put_tag(h, "RIFF");
            put_u32(h, 36 + data_bytes);
            put_tag(h, "WAVE");
            put_tag(h, "fmt ");
            put_u32(h, 16);
            put_u16(h, format);
            put_u16(h, channels);
            put_u32(h, rate);
            put_u32(h, rate * channels * (bits / 8));
            put_u16(h, static_cast<std::uint16_t>(channels * (bits / 8)));
            put_u16(h, bits);
            put_tag(h, "data");
            put_u32(h, data_bytes);
            return h;
        }

        void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
            {
                throw IoError("cannot open '" + path.string() + "' for writing");
            }
            out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
            if (!out)
            {
                throw IoError("failed writing '" + path.string() + "'");
            }
        }
    }  // namespace

    Audio load_wav(const std::filesystem::path& path, double max_seconds)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
        {
            throw IoError("cannot open '" + path.string() + "'");
        }
        const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        {
            throw IoError("'" + path.string() + "' is not a RIFF/WAVE file");
        }

        std::uint16_t format = 0;
        std::uint16_t channels = 0;
        std::uint32_t rate = 0;
        std::uint16_t bits = 0;
        const unsigned char* data = nullptr;
        std::size_t data_size = 0;

        std::size_t pos = 12;
        while (pos + 8 <= bytes.size())
        {
            const unsigned char* chunk = bytes.data() + pos;
            const std::uint32_t size = read_u32(chunk + 4);
            const std::size_t body = pos + 8;
            if (body + size > bytes.size() && std::memcmp(chunk, "data", 4) != 0)
            {
                throw IoError("'" + path.string() + "': truncated chunk");
            }
            if (std::memcmp(chunk, "fmt ", 4) == 0)
            {
                if (size < 16)
                {
                    throw IoError("'" + path.string() + "': malformed fmt chunk");
                }
                format = read_u16(bytes.data() + body);
                channels = read_u16(bytes.data() + body + 2);
                rate = read_u32(bytes.data() + body + 4);
                bits = read_u16(bytes.data() + body + 14);
                if (format == kFormatExtensible && size >= 26)
                {
                    format = read_u16(bytes.data() + body + 24);
                }
            }
            else if (std::memcmp(chunk, "data", 4) == 0)
            {
                data = bytes.data() + body;
                // Tolerate writers that leave a bogus size on streamed output.
                data_size = std::min<std::size_t>(size, bytes.size() - body);
                break;
            }
            pos = body + size + (size & 1u);
        }

        if (channels == 0 || rate == 0)
        {
            throw IoError("'" + path.string() + "': missing or malformed fmt chunk");
        }
        if (!data)
        {
            throw IoError("'" + path.string() + "': no data chunk");
        }
        const bool pcm16 = format == kFormatPcm && bits == 16;
        const bool float32 = format == kFormatFloat && bits == 32;
        if (!pcm16 && !float32)
        {
            throw IoError("'" + path.string() + "': unsupported encoding (format " + std::to_string(format) + ", " +
                          std::to_string(bits) + " bits); need PCM16 or float32");
        }

        const std::size_t frame_bytes = static_cast<std::size_t>(channels) * (bits / 8);
        std::size_t frames = data_size / frame_bytes;
        if (max_seconds > 0.0)
        {
            frames = std::min<std::size_t>(frames, static_cast<std::size_t>(std::floor(max_seconds * rate)));
        }
        if (frames == 0)
        {
            throw IoError("'" + path.string() + "': no audio samples");
        }

        Audio audio;
        audio.sample_rate = rate;
        audio.channels = channels;
        audio.samples.resize(frames);
        for (std::size_t i = 0; i < frames; ++i)
        {
            const unsigned char* p = data + i * frame_bytes;
            if (pcm16)
            {
                const auto v = static_cast<std::int16_t>(read_u16(p));
                audio.samples[i] = static_cast<double>(v) / 32768.0;
            }
            else
            {
                const std::uint32_t raw = read_u32(p);
                float v = 0.0f;
                std::memcpy(&v, &raw, sizeof v);
                audio.samples[i] = static_cast<double>(v);
            }
        }
        return audio;
    }

    void save_wav(const std::filesystem::path& path, const std::vector<double>& samples, std::uint32_t sample_rate)
    {
        const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
        auto bytes = header(kFormatPcm, 1, sample_rate, 16, data_bytes);
        bytes.reserve(bytes.size() + data_bytes);
        for (double v : samples)
        {
            const double clipped = std::clamp(std::isfinite(v) ? v : 0.0, -1.0, 1.0);
            const auto q = static_cast<std::int16_t>(std::clamp(std::lround(clipped * 32768.0), -32768L, 32767L));
            put_u16(bytes, static_cast<std::uint16_t>(q));
        }
        write_file(path, bytes);
    }

    void save_wav_float(const std::filesystem::path& path, const std::vector<double>& samples,
                        std::uint32_t sample_rate, std::uint16_t channels)
    {
        const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 4);
        auto bytes = header(kFormatFloat, channels, sample_rate, 32, data_bytes);
        for (double v : samples)
        {
            const auto f = static_cast<float>(v);
            std::uint32_t raw = 0;
            std::memcpy(&raw, &f, sizeof raw);
            put_u32(bytes, raw);
        }
        write_file(path, bytes);
    }

}  // namespace pghi
