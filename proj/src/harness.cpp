#include "pghi/harness.hpp"

#include "pghi/pghi.hpp"
#include "pghi/wav.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

namespace pghi::harness
{
    namespace
    {
        constexpr std::array<std::pair<Algorithm, std::string_view>, 7> kAlgorithms{{
            {Algorithm::pghi, "pghi"},
            {Algorithm::pghi2, "pghi2"},
            {Algorithm::spsi, "spsi"},
            {Algorithm::gla, "gla"},
            {Algorithm::fgla, "fgla"},
            {Algorithm::gla_ws, "gla-ws"},
            {Algorithm::fgla_ws, "fgla-ws"},
        }};

        std::string fmt_double(double v, int digits = 17)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*g", digits, v);
            return buf;
        }

        /// Settings shared by reconstruction and pitch shifting.
        struct AlgoParams
        {
            Algorithm algorithm;
            double tol1;
            double tol2;
            std::size_t max_iter;
            double alpha;
            std::uint64_t seed;
        };

        struct PhaseResult
        {
            RealGrid phase;
            std::optional<IterTrace> trace;
        };

        /// Phase for the half-spectrum magnitude s (rows 0..M/2 of a real signal).
        PhaseResult estimate_phase(const RealGrid& s, const Window& g, const Window& gd, const GaborParams& p,
                                   double gamma, const AlgoParams& ap)
        {
            switch (ap.algorithm)
            {
            case Algorithm::pghi:
                return {pghi(s, p, gamma, ap.tol2, ap.tol2, ap.seed).phase, std::nullopt};
            case Algorithm::pghi2:
                return {pghi(s, p, gamma, ap.tol1, ap.tol2, ap.seed).phase, std::nullopt};
            case Algorithm::spsi:
                return {spsi(s, p).phase, std::nullopt};
            case Algorithm::gla:
            case Algorithm::fgla:
            case Algorithm::gla_ws:
            case Algorithm::fgla_ws:
                break;
            }

            GlaConfig cfg;
            cfg.max_iter = ap.max_iter;
            cfg.seed = ap.seed;
            cfg.real_signal = true;
            const bool fast = ap.algorithm == Algorithm::fgla || ap.algorithm == Algorithm::fgla_ws;
            cfg.alpha = fast ? ap.alpha : 0.0;
            if (ap.algorithm == Algorithm::gla_ws || ap.algorithm == Algorithm::fgla_ws)
            {
                const RealGrid warm = pghi(s, p, gamma, ap.tol1, ap.tol2, ap.seed).phase;
                cfg.init = GlaInit::warm;
                cfg.warm_phase = phase(expand_conjugate(polar(s, warm), p.M()));
            }
            const RealGrid full = expand_symmetric(s, p.M());
            GlaResult r = fast ? fgla(full, g, gd, p, cfg) : gla(full, g, gd, p, cfg);
            return {half_rows(r.estimate.phase), std::move(r.trace)};
        }

        std::size_t padded_length(std::size_t len, std::size_t a, std::size_t M)
        {
            const std::size_t block = std::lcm(a, M);
            return std::max<std::size_t>(1, (len + block - 1) / block) * block;
        }

        /// Analysis window and its canonical dual for the job's lattice.
        struct WindowPair
        {
            Window g;
            Window gd;
        };

        WindowPair make_windows(WindowKind kind, std::size_t support, double gamma_lattice, const GaborParams& p)
        {
            const double lambda = gamma_lattice / static_cast<double>(p.L());
            Window g = make_window(kind, p, std::min(support, p.L()), lambda);
            Window gd = canonical_dual(g, p);
            return {std::move(g), std::move(gd)};
        }

        void write_bytes(const std::filesystem::path& path, const std::string& bytes)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
            {
                throw IoError("cannot open '" + path.string() + "' for writing");
            }
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out)
            {
                throw IoError("failed writing '" + path.string() + "'");
            }
        }

        std::string csv_field(const std::string& s)
        {
            if (s.find_first_of(",\"\r\n") == std::string::npos)
            {
                return s;
            }
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"')
                {
                    out += '"';
                }
                out += c;
            }
            return out + "\"";
        }

        void put_u32(std::string& out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
            {
                out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
            }
        }

        std::uint32_t get_u32(const std::string& in, std::size_t pos)
        {
            std::uint32_t v = 0;
            for (int i = 0; i < 4; ++i)
            {
                v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
            }
            return v;
        }

        constexpr char kGridMagic[4] = {'P', 'G', 'R', 'D'};
        constexpr std::uint32_t kGridVersion = 1;

        /// Tracks files created by a run so a failure can remove them.
        class OutputGuard
        {
        public:
            ~OutputGuard()
            {
                if (!m_committed)
                {
                    for (const auto& p : m_paths)
                    {
                        std::error_code ec;
                        std::filesystem::remove(p, ec);
                    }
                }
            }

            const std::filesystem::path& add(std::filesystem::path p)
            {
                m_paths.push_back(std::move(p));
                return m_paths.back();
            }

            void commit() noexcept { m_committed = true; }

        private:
            std::vector<std::filesystem::path> m_paths;
            bool m_committed = false;
        };

        RunRecord base_record(const std::string& file_id, const JobConfig& cfg)
        {
            RunRecord r;
            r.file_id = file_id;
            r.algorithm = std::string(to_string(cfg.algorithm));
            r.window = std::string(to_string(cfg.window));
            r.support = cfg.window == WindowKind::gauss ? 0 : cfg.effective_support();
            r.a = cfg.a;
            r.M = cfg.M;
            r.digest = cfg.digest();
            return r;
        }

        BenchmarkResult bench_core(std::size_t count, const std::function<std::string(std::size_t)>& id_of,
                                   const std::function<std::vector<double>(std::size_t)>& load,
                                   const std::vector<JobConfig>& matrix, std::size_t threads)
        {
            if (matrix.empty())
            {
                throw std::invalid_argument("run_benchmark: empty configuration matrix");
            }
            if (count == 0)
            {
                throw std::invalid_argument("run_benchmark: no input signals");
            }
            for (const auto& cfg : matrix)
            {
                cfg.validate();
            }

            const std::size_t cells = matrix.size();
            BenchmarkResult result;
            result.records.resize(count * cells);

            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (std::size_t i = next++; i < count; i = next++)
                {
                    const std::string id = id_of(i);
                    std::vector<double> f;
                    std::string load_error;
                    try
                    {
                        f = load(i);
                    }
                    catch (const std::exception& e)
                    {
                        load_error = e.what();
                    }
                    for (std::size_t j = 0; j < cells; ++j)
                    {
                        RunRecord& slot = result.records[i * cells + j];
                        if (!load_error.empty())
                        {
                            slot = base_record(id, matrix[j]);
                            slot.error = load_error;
                            continue;
                        }
                        try
                        {
                            slot = reconstruct_signal(f, matrix[j], id).record;
                        }
                        catch (const std::exception& e)
                        {
                            slot = base_record(id, matrix[j]);
                            slot.error = e.what();
                        }
                    }
                }
            };

            const std::size_t n_workers = std::clamp<std::size_t>(threads, 1, count);
            if (n_workers == 1)
            {
                worker();
            }
            else
            {
                std::vector<std::thread> pool;
                pool.reserve(n_workers);
                for (std::size_t t = 0; t < n_workers; ++t)
                {
                    pool.emplace_back(worker);
                }
                for (auto& t : pool)
                {
                    t.join();
                }
            }
            result.summary = summarize(result.records);
            return result;
        }
    }  // namespace

    Algorithm parse_algorithm(std::string_view name)
    {
        for (const auto& [algo, label] : kAlgorithms)
        {
            if (label == name)
            {
                return algo;
            }
        }
        throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                                    "' (expected pghi, pghi2, spsi, gla, fgla, gla-ws or fgla-ws)");
    }

    std::string_view to_string(Algorithm algo) noexcept
    {
        for (const auto& [a, label] : kAlgorithms)
        {
            if (a == algo)
            {
                return label;
            }
        }
        return "?";
    }

    bool is_iterative(Algorithm algo) noexcept
    {
        return algo == Algorithm::gla || algo == Algorithm::fgla || algo == Algorithm::gla_ws ||
               algo == Algorithm::fgla_ws;
    }

    Lattice preset(std::string_view name)
    {
        if (name == "speech")
        {
            return {128, 1024};
        }
        if (name == "music")
        {
            return {256, 2048};
        }
        throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected speech or music)");
    }

    void JobConfig::validate() const
    {
        if (a == 0 || M == 0)
        {
            throw std::invalid_argument("hop a and channel count M must be positive");
        }
        if (M < a)
        {
            throw std::invalid_argument("M must be at least a");
        }
        if (!(tol1 > 0.0 && tol1 < 1.0) || !(tol2 > 0.0 && tol2 < 1.0))
        {
            throw std::invalid_argument("tolerances must lie in (0, 1)");
        }
        const bool uses_two_pass =
            algorithm == Algorithm::pghi2 || algorithm == Algorithm::gla_ws || algorithm == Algorithm::fgla_ws;
        if (uses_two_pass && tol1 < tol2)
        {
            throw std::invalid_argument("tol1 must not be smaller than tol2");
        }
        if ((algorithm == Algorithm::fgla || algorithm == Algorithm::fgla_ws) && !(alpha >= 0.0 && alpha < 1.0))
        {
            throw std::invalid_argument("alpha must lie in [0, 1)");
        }
        if (gamma && !(*gamma > 0.0))
        {
            throw std::invalid_argument("gamma must be positive");
        }
        if (!(range_db > 0.0))
        {
            throw std::invalid_argument("range_db must be positive");
        }
        if (max_seconds < 0.0)
        {
            throw std::invalid_argument("max_seconds must not be negative");
        }
    }

    std::string JobConfig::digest() const
    {
        std::ostringstream key;
        key << to_string(window) << '|' << (window == WindowKind::gauss ? 0 : effective_support()) << '|' << a << '|'
            << M << '|' << to_string(algorithm) << '|' << fmt_double(tol1) << '|' << fmt_double(tol2) << '|';
        if (is_iterative(algorithm))
        {
            key << max_iter << '|' << fmt_double(alpha) << '|';
        }
        key << seed << '|' << (gamma ? fmt_double(*gamma) : "auto") << '|' << fmt_double(max_seconds);

        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : key.str())
        {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    Reconstruction reconstruct_signal(const std::vector<double>& f, const JobConfig& cfg, const std::string& file_id)
    {
        cfg.validate();
        if (f.empty())
        {
            throw std::invalid_argument("reconstruct: empty signal");
        }
        const auto start = std::chrono::steady_clock::now();

        const GaborParams p(padded_length(f.size(), cfg.a, cfg.M), cfg.a, cfg.M);
        std::vector<double> padded(f);
        padded.resize(p.L(), 0.0);

        const auto [g, gd] = make_windows(cfg.window, cfg.effective_support(), p.matched_gamma(), p);
        const double gamma = cfg.gamma.value_or(window_gamma(g));

        const ComplexGrid c = half_rows(dgt(padded, g, p));
        const RealGrid s = magnitude(c);

        const AlgoParams ap{cfg.algorithm, cfg.tol1, cfg.tol2, cfg.max_iter, cfg.alpha, cfg.seed};
        PhaseResult est = estimate_phase(s, g, gd, p, gamma, ap);

        const ComplexGrid c_hat = polar(s, est.phase);
        std::vector<double> out = synthesize_real(s, est.phase, gd, p);

        Reconstruction result;
        result.record = base_record(file_id, cfg);
        auto& m = result.record.metrics;
        const double energy = std::inner_product(f.begin(), f.end(), f.begin(), 0.0);
        if (energy > 0.0)
        {
            const auto e = relative_error(std::span<const double>(f), std::span<const double>(out.data(), f.size()));
            m.E = e.ratio;
            m.E_dB = e.db;
        }
        if (std::any_of(s.data().begin(), s.data().end(), [](double v) { return v > 0.0; }))
        {
            const auto cv = spectral_convergence(s, c_hat, g, gd, p);
            m.C = cv.ratio;
            m.C_dB = cv.db;
            m.inconsistency = inconsistency(expand_conjugate(c_hat, p.M()), g, gd, p);
        }
        result.record.trace = std::move(est.trace);

        if (cfg.export_phasediff)
        {
            const RealGrid reached = phase(half_rows(dgt(out, g, p)));
            result.phasediff = phase_difference(reached, phase(c), s, cfg.range_db);
        }
        out.resize(f.size());
        result.signal = std::move(out);
        result.record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

    RunRecord run_reconstruction(const JobConfig& cfg)
    {
        cfg.validate();
        const Audio audio = load_wav(cfg.input, cfg.max_seconds);
        const std::string id = cfg.input.filename().string();
        Reconstruction r = reconstruct_signal(audio.samples, cfg, id);

        const auto dir = cfg.output_dir.empty() ? std::filesystem::path(".") : cfg.output_dir;
        std::filesystem::create_directories(dir);
        const std::string base = cfg.input.stem().string() + "_" + r.record.algorithm + "_" + r.record.window;

        OutputGuard guard;
        save_wav(guard.add(dir / (base + ".wav")), r.signal, audio.sample_rate);
        if (r.phasediff)
        {
            save_grid(guard.add(dir / (base + "_phasediff.grid")), *r.phasediff);
            save_grid_csv(guard.add(dir / (base + "_phasediff.csv")), *r.phasediff);
        }
        if (cfg.export_trace && r.record.trace)
        {
            std::string csv = "iteration,C,C_dB\r\n";
            const auto db = r.record.trace->convergence_db();
            for (std::size_t k = 0; k < db.size(); ++k)
            {
                csv += std::to_string(k + 1) + "," + fmt_double(r.record.trace->convergence[k]) + "," +
                       fmt_double(db[k]) + "\r\n";
            }
            write_bytes(guard.add(dir / (base + "_trace.csv")), csv);
        }
        guard.commit();
        return r.record;
    }

    BenchmarkResult run_benchmark(const std::vector<NamedSignal>& signals, const std::vector<JobConfig>& matrix,
                                  std::size_t threads)
    {
        return bench_core(
            signals.size(), [&](std::size_t i) { return signals[i].id; },
            [&](std::size_t i) { return signals[i].samples; }, matrix, threads);
    }

    BenchmarkResult run_benchmark(const std::vector<std::filesystem::path>& files, const std::vector<JobConfig>& matrix,
                                  std::size_t threads)
    {
        const double max_seconds = matrix.empty() ? 0.0 : matrix.front().max_seconds;
        return bench_core(
            files.size(), [&](std::size_t i) { return files[i].string(); },
            [&](std::size_t i) { return load_wav(files[i], max_seconds).samples; }, matrix, threads);
    }

    std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records)
    {
        using Key = std::tuple<std::string, std::string, std::size_t, std::size_t>;
        std::vector<SummaryRow> rows;
        std::map<Key, std::size_t> index;
        for (const auto& r : records)
        {
            const Key key{r.algorithm, r.window, r.a, r.M};
            auto [it, inserted] = index.try_emplace(key, rows.size());
            if (inserted)
            {
                rows.push_back({r.algorithm, r.window, r.a, r.M, 0.0, 0, 0});
            }
            SummaryRow& row = rows[it->second];
            if (r.ok())
            {
                row.mean_C_dB += r.metrics.C_dB;
                ++row.count;
            }
            else
            {
                ++row.failures;
            }
        }
        for (auto& row : rows)
        {
            row.mean_C_dB = row.count ? row.mean_C_dB / static_cast<double>(row.count)
                                      : std::numeric_limits<double>::quiet_NaN();
        }
        return rows;
    }

    std::vector<std::filesystem::path> list_wav_files(const std::filesystem::path& dir)
    {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
        {
            if (!entry.is_regular_file())
            {
                continue;
            }
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
            if (ext == ".wav")
            {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        return files;
    }

    std::string records_csv(const std::vector<RunRecord>& records)
    {
        std::string out = "file,algorithm,window,support,a,M,digest,E_dB,C_dB,inconsistency,iterations,status,error\r\n";
        for (const auto& r : records)
        {
            const std::vector<std::string> fields{
                r.file_id,
                r.algorithm,
                r.window,
                std::to_string(r.support),
                std::to_string(r.a),
                std::to_string(r.M),
                r.digest,
                r.ok() ? fmt_double(r.metrics.E_dB, 10) : "",
                r.ok() ? fmt_double(r.metrics.C_dB, 10) : "",
                r.ok() ? fmt_double(r.metrics.inconsistency, 10) : "",
                std::to_string(r.trace ? r.trace->size() : 0),
                r.ok() ? "ok" : "failed",
                r.error,
            };
            for (std::size_t i = 0; i < fields.size(); ++i)
            {
                out += (i ? "," : "") + csv_field(fields[i]);
            }
            out += "\r\n";
        }
        return out;
    }

    std::string summary_json(const BenchmarkResult& result)
    {
        using nlohmann::json;
        json summary = json::array();
        for (const auto& row : result.summary)
        {
            summary.push_back({{"algorithm", row.algorithm},
                               {"window", row.window},
                               {"a", row.a},
                               {"M", row.M},
                               {"mean_C_dB", row.count ? json(row.mean_C_dB) : json(nullptr)},
                               {"files", row.count},
                               {"failures", row.failures}});
        }
        json records = json::array();
        std::size_t failures = 0;
        for (const auto& r : result.records)
        {
            json item{{"file", r.file_id},     {"algorithm", r.algorithm}, {"window", r.window},
                      {"support", r.support},  {"a", r.a},                 {"M", r.M},
                      {"digest", r.digest},    {"seconds", r.seconds}};
            if (r.ok())
            {
                item["E_dB"] = r.metrics.E_dB;
                item["C_dB"] = r.metrics.C_dB;
                item["inconsistency"] = r.metrics.inconsistency;
                if (r.trace)
                {
                    item["trace_C_dB"] = r.trace->convergence_db();
                }
            }
            else
            {
                item["error"] = r.error;
                ++failures;
            }
            records.push_back(std::move(item));
        }
        json doc{{"summary", summary}, {"records", records}, {"failures", failures}};
        return doc.dump(2) + "\n";
    }

    PitchShiftPlan plan_pitch_shift(int semitones, std::size_t synthesis_hop)
    {
        if (semitones < -12 || semitones > 12)
        {
            throw std::invalid_argument("pitch shift is limited to +-12 semitones");
        }
        if (synthesis_hop == 0)
        {
            throw std::invalid_argument("synthesis hop must be positive");
        }
        PitchShiftPlan plan;
        plan.ratio = std::pow(2.0, semitones / 12.0);
        plan.synthesis_hop = synthesis_hop;
        const long a_a = std::lround(static_cast<double>(synthesis_hop) / plan.ratio);
        if (a_a < 1)
        {
            throw std::invalid_argument("analysis hop rounds to zero");
        }
        plan.analysis_hop = static_cast<std::size_t>(a_a);
        return plan;
    }

    PitchShiftResult pitch_shift(const std::vector<double>& f, std::uint32_t rate, const PitchShiftConfig& cfg)
    {
        if (f.empty())
        {
            throw std::invalid_argument("pitch_shift: empty signal");
        }
        if (rate == 0)
        {
            throw std::invalid_argument("pitch_shift: sample rate must be positive");
        }
        PitchShiftResult result;
        result.plan = plan_pitch_shift(cfg.semitones, cfg.synthesis_hop);
        const std::size_t a_a = result.plan.analysis_hop;
        const std::size_t a_s = result.plan.synthesis_hop;
        const std::size_t M = cfg.M;
        if (M < std::max(a_a, a_s))
        {
            throw std::invalid_argument("pitch_shift: M must be at least both hop sizes");
        }

        // N frames must make both N * a_a and N * a_s multiples of M.
        const std::size_t q = std::lcm(M / std::gcd(M, a_a), M / std::gcd(M, a_s));
        const std::size_t frames = (f.size() + a_a - 1) / a_a;
        const std::size_t N = std::max<std::size_t>(1, (frames + q - 1) / q) * q;
        const GaborParams pa(N * a_a, a_a, M);
        const GaborParams ps(N * a_s, a_s, M);

        // One window shape (in samples) on both lattices, matched to synthesis.
        const double gamma_lattice = ps.matched_gamma();
        const std::size_t support = cfg.support == 0 ? M : cfg.support;
        const Window ga = make_window(cfg.window, pa, std::min(support, pa.L()), gamma_lattice / static_cast<double>(pa.L()));
        const auto [gs, gds] = make_windows(cfg.window, support, gamma_lattice, ps);

        std::vector<double> padded(f);
        padded.resize(pa.L(), 0.0);
        const RealGrid s = magnitude(half_rows(dgt(padded, ga, pa)));

        const AlgoParams ap{cfg.algorithm, cfg.tol1, cfg.tol2, cfg.max_iter, cfg.alpha, cfg.seed};
        const PhaseResult est = estimate_phase(s, gs, gds, ps, window_gamma(gs), ap);

        std::vector<double> out = synthesize_real(s, est.phase, gds, ps);
        const auto out_len = static_cast<std::size_t>(
            std::lround(static_cast<double>(f.size()) * static_cast<double>(a_s) / static_cast<double>(a_a)));
        out.resize(std::min(out_len, out.size()));
        result.signal = std::move(out);
        result.output_rate = static_cast<std::uint32_t>(
            std::lround(static_cast<double>(rate) * static_cast<double>(a_s) / static_cast<double>(a_a)));
        result.inconsistency = inconsistency(expand_conjugate(polar(s, est.phase), M), gs, gds, ps);
        return result;
    }

    void save_grid(const std::filesystem::path& path, const RealGrid& grid)
    {
        std::string bytes(kGridMagic, 4);
        put_u32(bytes, kGridVersion);
        put_u32(bytes, static_cast<std::uint32_t>(grid.rows()));
        put_u32(bytes, static_cast<std::uint32_t>(grid.cols()));
        bytes.reserve(16 + grid.size() * 8);
        for (std::size_t m = 0; m < grid.rows(); ++m)
        {
            for (std::size_t n = 0; n < grid.cols(); ++n)
            {
                std::uint64_t raw = 0;
                const double v = grid(m, n);
                std::memcpy(&raw, &v, sizeof raw);
                for (int i = 0; i < 8; ++i)
                {
                    bytes.push_back(static_cast<char>((raw >> (8 * i)) & 0xFF));
                }
            }
        }
        write_bytes(path, bytes);
    }

    RealGrid load_grid(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
        {
            throw IoError("cannot open '" + path.string() + "'");
        }
        const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (bytes.size() < 16 || std::memcmp(bytes.data(), kGridMagic, 4) != 0 || get_u32(bytes, 4) != kGridVersion)
        {
            throw IoError("'" + path.string() + "' is not a grid file");
        }
        const std::size_t rows = get_u32(bytes, 8);
        const std::size_t cols = get_u32(bytes, 12);
        if (bytes.size() != 16 + rows * cols * 8)
        {
            throw IoError("'" + path.string() + "': size does not match header");
        }
        RealGrid grid(rows, cols);
        std::size_t pos = 16;
        for (std::size_t m = 0; m < rows; ++m)
        {
            for (std::size_t n = 0; n < cols; ++n, pos += 8)
            {
                std::uint64_t raw = 0;
                for (int i = 0; i < 8; ++i)
                {
                    raw |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
                }
                std::memcpy(&grid(m, n), &raw, sizeof raw);
            }
        }
        return grid;
    }

    void save_grid_csv(const std::filesystem::path& path, const RealGrid& grid)
    {
        std::string out = "bin";
        for (std::size_t n = 0; n < grid.cols(); ++n)
        {
            out += ",f" + std::to_string(n);
        }
        out += "\r\n";
        for (std::size_t m = 0; m < grid.rows(); ++m)
        {
            out += std::to_string(m);
            for (std::size_t n = 0; n < grid.cols(); ++n)
            {
                out += ',';
                if (!std::isnan(grid(m, n)))
                {
                    out += fmt_double(grid(m, n));
                }
            }
            out += "\r\n";
        }
        write_bytes(path, out);
    }

    RealGrid phase_difference(const RealGrid& estimate, const RealGrid& reference, const RealGrid& s, double range_db)
    {
        require_same_shape(estimate, reference, "phase_difference");
        require_same_shape(estimate, s, "phase_difference");
        const double peak = s.empty() ? 0.0 : *std::max_element(s.data().begin(), s.data().end());
        const double floor = peak * std::pow(10.0, -range_db / 20.0);
        RealGrid out(s.rows(), s.cols());
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            out.data()[i] = (peak > 0.0 && s.data()[i] >= floor)
                                ? std::abs(principal_value(estimate.data()[i] - reference.data()[i])) / std::numbers::pi
                                : std::numeric_limits<double>::quiet_NaN();
        }
        return out;
    }

    std::size_t default_threads()
    {
        if (const char* env = std::getenv("PGHI_THREADS"))
        {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
            {
                return static_cast<std::size_t>(v);
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

}  // namespace pghi::harness
