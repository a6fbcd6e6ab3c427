#pragma once

#include "pghi/baselines.hpp"
#include "pghi/gabor.hpp"
#include "pghi/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pghi::harness
{
    enum class Algorithm
    {
        pghi,     ///< single pass at tol2
        pghi2,    ///< two-pass (tol1, then tol2)
        spsi,
        gla,
        fgla,
        gla_ws,   ///< gla warm-started from pghi2
        fgla_ws,  ///< fgla warm-started from pghi2
    };

    Algorithm parse_algorithm(std::string_view name);
    std::string_view to_string(Algorithm algo) noexcept;
    bool is_iterative(Algorithm algo) noexcept;

    struct Lattice
    {
        std::size_t a = 0;
        std::size_t M = 0;
    };

    /// Named parameter sets: "speech" (a=128, M=1024) and "music" (a=256, M=2048).
    Lattice preset(std::string_view name);

    struct JobConfig
    {
        WindowKind window = WindowKind::gauss;
        /// Support of compactly supported windows; 0 selects M.
        std::size_t support = 0;
        std::size_t a = 128;
        std::size_t M = 1024;
        Algorithm algorithm = Algorithm::pghi2;
        double tol1 = kDefaultTol1;
        double tol2 = kDefaultTol2;
        std::size_t max_iter = 100;
        double alpha = 0.99;
        std::uint64_t seed = kDefaultSeed;
        /// Overrides the Gaussian model parameter used for the gradient.
        std::optional<double> gamma;
        /// Truncate inputs longer than this (0 keeps everything).
        double max_seconds = 10.0;

        std::filesystem::path input;
        std::filesystem::path output_dir;
        /// Export |phase difference| / pi to a grid file next to the WAV.
        bool export_phasediff = false;
        /// Dynamic range kept in the phase-difference export.
        double range_db = 60.0;
        /// Write the per-iteration convergence trace (iterative algorithms).
        bool export_trace = false;

        std::size_t effective_support() const noexcept { return support == 0 ? M : support; }

        /// Throws std::invalid_argument on inconsistent settings.
        void validate() const;

        /// Stable FNV-1a hex digest of every field that affects the result.
        std::string digest() const;
    };

    struct RunRecord
    {
        std::string file_id;
        std::string algorithm;
        std::string window;
        std::size_t support = 0;
        std::size_t a = 0;
        std::size_t M = 0;
        std::string digest;
        MetricReport metrics;
        std::optional<IterTrace> trace;
        double seconds = 0.0;
        /// Empty on success.
        std::string error;

        bool ok() const noexcept { return error.empty(); }
    };

    struct Reconstruction
    {
        RunRecord record;
        /// Same length as the input signal.
        std::vector<double> signal;
        /// Rows 0..M/2; NaN outside the exported magnitude range.
        std::optional<RealGrid> phasediff;
    };

    /// Core in-memory pipeline: pad -> dgt -> drop phase -> algorithm ->
    /// synthesize -> trim -> metrics. File fields of cfg are ignored.
    Reconstruction reconstruct_signal(const std::vector<double>& f, const JobConfig& cfg,
                                      const std::string& file_id = "signal");

    /// reconstruct_signal on cfg.input, writing <stem>_<algo>_<window>.wav
    /// (plus optional grid/trace files) below cfg.output_dir. Files written
    /// by a failing run are removed before the exception propagates.
    RunRecord run_reconstruction(const JobConfig& cfg);

    struct NamedSignal
    {
        std::string id;
        std::vector<double> samples;
    };

    struct SummaryRow
    {
        std::string algorithm;
        std::string window;
        std::size_t a = 0;
        std::size_t M = 0;
        double mean_C_dB = 0.0;
        std::size_t count = 0;
        std::size_t failures = 0;
    };

    struct BenchmarkResult
    {
        /// File-major, then matrix order, regardless of scheduling.
        std::vector<RunRecord> records;
        std::vector<SummaryRow> summary;
    };

    /// Runs every (signal x config) cell on up to `threads` workers. Per-cell
    /// failures are recorded in RunRecord::error.
    BenchmarkResult run_benchmark(const std::vector<NamedSignal>& signals, const std::vector<JobConfig>& matrix,
                                  std::size_t threads);

    /// File variant: unreadable files produce failed records for each config.
    BenchmarkResult run_benchmark(const std::vector<std::filesystem::path>& files, const std::vector<JobConfig>& matrix,
                                  std::size_t threads);

    /// Mean C_dB per (algorithm, window, a, M) over successful records.
    std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

    /// *.wav below dir (recursive), sorted.
    std::vector<std::filesystem::path> list_wav_files(const std::filesystem::path& dir);

    /// One RFC-4180 row per record, with a header. Deterministic: no timing.
    std::string records_csv(const std::vector<RunRecord>& records);
    std::string summary_json(const BenchmarkResult& result);

    struct PitchShiftConfig
    {
        int semitones = 0;
        std::size_t synthesis_hop = 256;
        std::size_t M = 2048;
        WindowKind window = WindowKind::gauss;
        std::size_t support = 0;
        Algorithm algorithm = Algorithm::pghi2;
        double tol1 = kDefaultTol1;
        double tol2 = kDefaultTol2;
        std::size_t max_iter = 100;
        double alpha = 0.99;
        std::uint64_t seed = kDefaultSeed;
    };

    struct PitchShiftPlan
    {
        double ratio = 1.0;
        std::size_t analysis_hop = 0;
        std::size_t synthesis_hop = 0;
    };

    /// r = 2^(semitones / 12), a_a = round(a_s / r). Throws std::invalid_argument
    /// for |semitones| > 12 or a_a < 1.
    PitchShiftPlan plan_pitch_shift(int semitones, std::size_t synthesis_hop);

    struct PitchShiftResult
    {
        PitchShiftPlan plan;
        std::vector<double> signal;
        /// Playback rate that turns the time stretch into a pitch shift.
        std::uint32_t output_rate = 0;
        double inconsistency = 0.0;
    };

    /// Analyse with hop a_a, rebuild phase on the synthesis lattice, synthesize
    /// with hop a_s, relabel the sample rate.
    PitchShiftResult pitch_shift(const std::vector<double>& f, std::uint32_t rate, const PitchShiftConfig& cfg);

    /// Binary grid: "PGRD" magic, uint32 version, uint32 rows, uint32 cols
    /// (16 bytes, little endian), then rows*cols float64 LE in row-major order.
    void save_grid(const std::filesystem::path& path, const RealGrid& grid);
    RealGrid load_grid(const std::filesystem::path& path);
    /// CSV fallback: header "bin,f0,f1,...", one row per frequency bin; NaN
    /// as an empty field.
    void save_grid_csv(const std::filesystem::path& path, const RealGrid& grid);

    /// |principal_value(estimate - reference)| / pi in [0, 1]; NaN where s is
    /// more than range_db below its maximum.
    RealGrid phase_difference(const RealGrid& estimate, const RealGrid& reference, const RealGrid& s, double range_db);

    /// Default worker count: $PGHI_THREADS if set and positive, else the
    /// hardware concurrency (at least 1).
    std::size_t default_threads();

}  // namespace pghi::harness
