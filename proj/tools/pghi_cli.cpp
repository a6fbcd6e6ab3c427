// Command line front end: reconstruct, bench, pitchshift, gradients, synth-corpus.

#include "pghi/corpus.hpp"
#include "pghi/harness.hpp"
#include "pghi/phase_gradient.hpp"
#include "pghi/wav.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>

namespace
{
    namespace fs = std::filesystem;
    namespace h = pghi::harness;

    enum Exit
    {
        kOk = 0,
        kUsage = 1,
        kIo = 2,
        kNumerical = 3,
    };

    /// Options shared by the analysis subcommands.
    struct Common
    {
        std::string window = "gauss";
        std::size_t support = 0;
        std::size_t a = 0;
        std::size_t M = 0;
        std::string preset = "speech";
        double tol1 = pghi::kDefaultTol1;
        double tol2 = pghi::kDefaultTol2;
        std::size_t maxit = 100;
        double alpha = 0.99;
        std::uint64_t seed = pghi::kDefaultSeed;
        double gamma = 0.0;
        double max_seconds = 10.0;

        void attach(CLI::App* cmd, bool algo_tuning)
        {
            cmd->add_option("--preset", preset, "Lattice preset: speech (a=128, M=1024) or music (a=256, M=2048)")
                ->check(CLI::IsMember({"speech", "music"}))
                ->capture_default_str();
            cmd->add_option("-a", a, "Hop size (overrides the preset)");
            cmd->add_option("-M", M, "Number of channels (overrides the preset)");
            cmd->add_option("--support", support, "Support of compactly supported windows (default M)");
            cmd->add_option("--gamma", gamma, "Gaussian model parameter for the gradient (default: from the window)");
            cmd->add_option("--max-seconds", max_seconds, "Truncate longer inputs (0 = keep all)")->capture_default_str();
            if (algo_tuning)
            {
                cmd->add_option("--tol1", tol1, "First-pass relative tolerance")->capture_default_str();
                cmd->add_option("--tol2", tol2, "Second-pass relative tolerance")->capture_default_str();
                cmd->add_option("--maxit", maxit, "Iterations of (F)GLA")->capture_default_str();
                cmd->add_option("--alpha", alpha, "FGLA momentum")->capture_default_str();
                cmd->add_option("--seed", seed, "Seed for random phase")->capture_default_str();
            }
        }

        h::JobConfig job(std::string_view window_name, std::string_view algo) const
        {
            h::JobConfig cfg;
            const auto lattice = h::preset(preset);
            cfg.a = a ? a : lattice.a;
            cfg.M = M ? M : lattice.M;
            cfg.window = pghi::parse_window_kind(window_name);
            cfg.support = support;
            cfg.algorithm = h::parse_algorithm(algo);
            cfg.tol1 = tol1;
            cfg.tol2 = tol2;
            cfg.max_iter = maxit;
            cfg.alpha = alpha;
            cfg.seed = seed;
            if (gamma > 0.0)
            {
                cfg.gamma = gamma;
            }
            cfg.max_seconds = max_seconds;
            return cfg;
        }
    };

    void write_text(const fs::path& path, const std::string& text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text))
        {
            throw pghi::IoError("cannot write '" + path.string() + "'");
        }
    }

    nlohmann::json record_json(const h::RunRecord& r)
    {
        nlohmann::json j{{"file", r.file_id},   {"algorithm", r.algorithm}, {"window", r.window},
                         {"support", r.support}, {"a", r.a},                {"M", r.M},
                         {"digest", r.digest},   {"E_dB", r.metrics.E_dB},  {"C_dB", r.metrics.C_dB},
                         {"inconsistency", r.metrics.inconsistency},       {"seconds", r.seconds}};
        if (r.trace)
        {
            j["iterations"] = r.trace->size();
        }
        return j;
    }

    void print_summary(const std::vector<h::SummaryRow>& rows)
    {
        std::printf("%-9s %-11s %6s %6s %10s %6s %8s\n", "algorithm", "window", "a", "M", "mean C_dB", "files",
                    "failures");
        for (const auto& r : rows)
        {
            std::printf("%-9s %-11s %6zu %6zu %10.2f %6zu %8zu\n", r.algorithm.c_str(), r.window.c_str(), r.a, r.M,
                        r.mean_C_dB, r.count, r.failures);
        }
    }

    template <typename F> int guarded(F&& body)
    {
        try
        {
            return body();
        }
        catch (const pghi::IoError& e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return kIo;
        }
        catch (const fs::filesystem_error& e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return kIo;
        }
        catch (const pghi::NumericalError& e)
        {
            std::cerr << "numerical failure: " << e.what() << '\n';
            return kNumerical;
        }
        catch (const std::invalid_argument& e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return kUsage;
        }
        catch (const std::exception& e)
        {
            std::cerr << "numerical failure: " << e.what() << '\n';
            return kNumerical;
        }
    }
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Phase reconstruction from STFT/Gabor magnitudes"};
    app.require_subcommand(1);

    // reconstruct
    Common rc;
    std::string rc_window = "gauss";
    std::string rc_algo = "pghi2";
    std::string rc_input;
    std::string rc_out = ".";
    bool rc_phasediff = false;
    bool rc_trace = false;
    double rc_range = 60.0;
    auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild a signal from its magnitude only");
    reconstruct->add_option("input", rc_input, "Input WAV")->required();
    reconstruct->add_option("-o,--out", rc_out, "Output directory")->capture_default_str();
    reconstruct->add_option("--window", rc_window, "gauss | truncgauss | hann | hamming")->capture_default_str();
    reconstruct->add_option("--algo", rc_algo, "pghi | pghi2 | spsi | gla | fgla | gla-ws | fgla-ws")
        ->capture_default_str();
    reconstruct->add_flag("--export-phasediff", rc_phasediff, "Write |phase difference|/pi grids");
    reconstruct->add_option("--range-db", rc_range, "Magnitude range kept in the phase-difference grid")
        ->capture_default_str();
    reconstruct->add_flag("--export-trace", rc_trace, "Write the (F)GLA convergence trace");
    rc.attach(reconstruct, true);

    // bench
    Common bc;
    std::vector<std::string> bc_windows{"gauss"};
    std::vector<std::string> bc_algos{"pghi2", "spsi"};
    std::vector<std::string> bc_inputs;
    std::string bc_out = ".";
    std::size_t bc_threads = h::default_threads();
    auto* bench = app.add_subcommand("bench", "Run an algorithm x window matrix over a corpus");
    bench->add_option("inputs", bc_inputs, "WAV files or directories (searched recursively)")->required();
    bench->add_option("-o,--out", bc_out, "Directory for bench.csv and summary.json")->capture_default_str();
    bench->add_option("--window", bc_windows, "Window kinds (repeatable or comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--algo", bc_algos, "Algorithms (repeatable or comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("-j,--threads", bc_threads, "Worker threads (default: $PGHI_THREADS or hardware)")
        ->capture_default_str();
    bc.attach(bench, true);

    // pitchshift
    Common pc;
    std::string pc_window = "gauss";
    std::string pc_algo = "pghi2";
    std::string pc_input;
    std::string pc_output;
    int pc_semitones = 0;
    std::size_t pc_hop = 256;
    auto* pitch = app.add_subcommand("pitchshift", "Shift pitch by changing the analysis hop");
    pitch->add_option("input", pc_input, "Input WAV")->required();
    pitch->add_option("-o,--out", pc_output, "Output WAV (metadata goes to <out>.json)")->required();
    pitch->add_option("--semitones", pc_semitones, "Shift in semitones, -12..12")->required();
    pitch->add_option("--hop", pc_hop, "Synthesis hop size")->capture_default_str();
    pitch->add_option("--window", pc_window, "gauss | truncgauss | hann | hamming")->capture_default_str();
    pitch->add_option("--algo", pc_algo, "pghi | pghi2 | spsi | gla | fgla | gla-ws | fgla-ws")->capture_default_str();
    pc.M = 2048;
    pc.attach(pitch, true);

    // gradients
    Common gc;
    std::string gc_window = "gauss";
    std::string gc_input;
    std::string gc_out = ".";
    auto* gradients = app.add_subcommand("gradients", "Export the magnitude-derived phase gradient");
    gradients->add_option("input", gc_input, "Input WAV")->required();
    gradients->add_option("-o,--out", gc_out, "Output directory")->capture_default_str();
    gradients->add_option("--window", gc_window, "gauss | truncgauss | hann | hamming")->capture_default_str();
    gc.attach(gradients, false);

    // synth-corpus
    std::string sc_out = "corpus";
    auto* synth = app.add_subcommand("synth-corpus", "Write the built-in synthetic speech/music clips");
    synth->add_option("-o,--out", sc_out, "Output directory")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kUsage;
    }

    if (*reconstruct)
    {
        return guarded([&] {
            h::JobConfig cfg = rc.job(rc_window, rc_algo);
            cfg.input = rc_input;
            cfg.output_dir = rc_out;
            cfg.export_phasediff = rc_phasediff;
            cfg.range_db = rc_range;
            cfg.export_trace = rc_trace;
            const auto record = h::run_reconstruction(cfg);
            std::cout << record_json(record).dump(2) << '\n';
            return kOk;
        });
    }

    if (*bench)
    {
        return guarded([&] {
            std::vector<h::JobConfig> matrix;
            for (const auto& algo : bc_algos)
            {
                for (const auto& window : bc_windows)
                {
                    matrix.push_back(bc.job(window, algo));
                }
            }
            std::vector<fs::path> files;
            for (const auto& in : bc_inputs)
            {
                if (fs::is_directory(in))
                {
                    const auto found = h::list_wav_files(in);
                    files.insert(files.end(), found.begin(), found.end());
                }
                else
                {
                    files.emplace_back(in);
                }
            }
            if (files.empty())
            {
                throw pghi::IoError("no WAV files found");
            }
            const auto result = h::run_benchmark(files, matrix, bc_threads);
            fs::create_directories(bc_out);
            write_text(fs::path(bc_out) / "bench.csv", h::records_csv(result.records));
            write_text(fs::path(bc_out) / "summary.json", h::summary_json(result));
            print_summary(result.summary);

            std::size_t failed = 0;
            for (const auto& r : result.records)
            {
                if (!r.ok())
                {
                    ++failed;
                    std::cerr << "warning: " << r.file_id << " [" << r.algorithm << "/" << r.window
                              << "]: " << r.error << '\n';
                }
            }
            return failed == result.records.size() ? kNumerical : kOk;
        });
    }

    if (*pitch)
    {
        return guarded([&] {
            h::PitchShiftConfig cfg;
            cfg.semitones = pc_semitones;
            cfg.synthesis_hop = pc_hop;
            cfg.M = pc.M;
            cfg.window = pghi::parse_window_kind(pc_window);
            cfg.support = pc.support;
            cfg.algorithm = h::parse_algorithm(pc_algo);
            cfg.tol1 = pc.tol1;
            cfg.tol2 = pc.tol2;
            cfg.max_iter = pc.maxit;
            cfg.alpha = pc.alpha;
            cfg.seed = pc.seed;
            const auto audio = pghi::load_wav(pc_input, pc.max_seconds);
            const auto result = h::pitch_shift(audio.samples, audio.sample_rate, cfg);

            const fs::path out(pc_output);
            if (out.has_parent_path())
            {
                fs::create_directories(out.parent_path());
            }
            pghi::save_wav(out, result.signal, result.output_rate);
            const nlohmann::json meta{
                {"input", pc_input},
                {"semitones", pc_semitones},
                {"ratio", result.plan.ratio},
                {"analysis_hop", result.plan.analysis_hop},
                {"synthesis_hop", result.plan.synthesis_hop},
                {"M", cfg.M},
                {"window", pc_window},
                {"algorithm", pc_algo},
                {"input_rate", audio.sample_rate},
                {"output_rate", result.output_rate},
                {"resampling", "playback-rate relabeling; no anti-aliasing filter is applied"},
                {"inconsistency", result.inconsistency},
            };
            try
            {
                write_text(out.string() + ".json", meta.dump(2) + "\n");
            }
            catch (...)
            {
                std::error_code ec;
                fs::remove(out, ec);
                throw;
            }
            std::cout << meta.dump(2) << '\n';
            return kOk;
        });
    }

    if (*gradients)
    {
        return guarded([&] {
            const h::JobConfig cfg = gc.job(gc_window, "pghi2");
            cfg.validate();
            const auto audio = pghi::load_wav(gc_input, cfg.max_seconds);
            const std::size_t block = std::lcm(cfg.a, cfg.M);
            const std::size_t L = std::max<std::size_t>(1, (audio.samples.size() + block - 1) / block) * block;
            const pghi::GaborParams p(L, cfg.a, cfg.M);
            std::vector<double> f = audio.samples;
            f.resize(L, 0.0);
            const auto g = pghi::make_window(cfg.window, p, std::min(cfg.effective_support(), L),
                                             p.matched_gamma() / static_cast<double>(L));
            const double gamma = cfg.gamma.value_or(pghi::window_gamma(g));
            const auto s = pghi::magnitude(pghi::half_rows(pghi::dgt(f, g, p)));
            const auto grad = pghi::scaled_phase_gradient(pghi::log_magnitude(s), p, gamma);

            fs::create_directories(gc_out);
            const std::string base = fs::path(gc_input).stem().string();
            const fs::path dir(gc_out);
            h::save_grid(dir / (base + "_fgrad.grid"), grad.fgrad);
            h::save_grid_csv(dir / (base + "_fgrad.csv"), grad.fgrad);
            h::save_grid(dir / (base + "_tgrad.grid"), grad.tgrad);
            h::save_grid_csv(dir / (base + "_tgrad.csv"), grad.tgrad);
            std::cout << nlohmann::json{{"rows", s.rows()}, {"cols", s.cols()}, {"gamma", gamma}, {"a", cfg.a}, {"M", cfg.M}}
                             .dump(2)
                      << '\n';
            return kOk;
        });
    }

    if (*synth)
    {
        return guarded([&] {
            pghi::corpus::write_corpus(sc_out);
            std::cout << "wrote corpus to " << sc_out << '\n';
            return kOk;
        });
    }
    return kUsage;
}
