#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "entropy_gap/io.hpp"

namespace entropy_gap::cli {

enum class Suite {
    Substate,
    NormSandwich,
    Monotonicity,
    Bipartite,
    Cmi,
    Berta,
    BertaGeneral,
    MarginalMono,
    SuperSsa,
    SigmaSubstate,
    TwoMarginal,
    GoldenThompson,
    Markov,
    Scan,
};

const std::vector<Suite>& all_suites();
const char* to_string(Suite s);
/// Parses a suite name; "all" expands to every suite.
std::vector<Suite> parse_suites(const std::string& name);

enum class Format { Json, Csv };

struct RunConfig {
    std::string suite = "all";
    Dims dims{2, 2, 2};
    std::size_t n_samples = 100;
    std::uint64_t seed = 0;
    double tol_identity = 1e-8;
    double tol_inequality = 1e-8;
    std::vector<std::filesystem::path> input_files;
    std::optional<std::filesystem::path> output;
    Format format = Format::Json;
    std::size_t workers = 0;  // 0: default_worker_count()
    bool timing = false;

    /// Throws InvalidConfig when an invariant is violated.
    void validate() const;
};

struct SampleResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::string error_kind;  // empty unless the sample raised
    std::string error_message;
    double margin = 0.0;  // worst gap, −residual, or slack; negative is bad
    io::json payload;
};

struct SuiteResult {
    Suite suite{};
    std::vector<SampleResult> samples;
    std::size_t pass_count = 0;
    std::size_t fail_count = 0;
    double worst_gap = 0.0;
    std::uint64_t worst_sample_seed = 0;
    io::json extra;  // scan summary for the scan suite
};

struct SuiteReport {
    RunConfig config;
    std::vector<SuiteResult> suites;
    double wall_time = 0.0;

    bool all_pass() const;
};

SuiteReport run_verify(const RunConfig& config);

io::json report_to_json(const SuiteReport& report);
/// One row per numeric field: suite,index,seed,status,field,value. Field
/// paths are dotted JSON paths into the sample, array indices included.
std::string report_to_csv(const SuiteReport& report);

enum class GenKind { Hs, Pure, MarkovClassicalC };
GenKind gen_kind_from_string(const std::string& s);
const char* to_string(GenKind k);

/// Writes n state files; returns their paths in index order.
std::vector<std::filesystem::path> cmd_gen(const Dims& dims, std::size_t n, std::uint64_t seed,
                                           GenKind kind, const std::filesystem::path& out_dir);

MultipartiteState generate_state(const Dims& dims, std::uint64_t seed, GenKind kind);

/// Runs the full CLI. Returns the process exit code: 0 success, 1 a
/// verification failure or non-conclusive verdict, 2 usage/config/IO errors.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace entropy_gap::cli
