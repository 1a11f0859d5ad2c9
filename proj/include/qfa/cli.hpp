#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfa::cli {

// One experiment invocation. Everything an output file depends on lives
// here; reruns with the same config and seed are byte-identical.
struct ExperimentConfig {
    std::string command;
    std::vector<std::uint64_t> n_values;
    std::vector<std::uint64_t> seeds{1};
    std::string out;             // output path; empty prints to stdout
    std::string format = "csv";  // csv | json | svg
    int threads = 0;

    // command-specific knobs
    std::uint64_t u = 21, v = 21;    // vaughan-check cutoffs
    std::uint64_t pmax = 1000;       // fourap / series truncation
    std::uint64_t trials = 20;       // witness trials
    double rho = 0.1;                // bohr radius
    std::vector<std::uint64_t> freqs{1};
    std::string coeffs_path;         // weyl polynomial file
    std::string box_spec;            // weyl box "a:b,c:d"
    std::string system_path;         // series input file
    bool inject_defect = false;      // lemmas negative control
    std::vector<std::string> suites{"philemma", "quartic", "polarization", "bohr0", "localization"};
};

// strict parse; unknown keys are a config error
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_tolerance_failure = 3;

struct RunResult {
    int exit_code = exit_ok;
    std::string output;   // the artifact written to `out` (or stdout)
    std::string message;  // human log, stderr only
};

RunResult run_norm_scan(const ExperimentConfig& config);
RunResult run_decay_scan(const ExperimentConfig& config);
RunResult run_bohr(const ExperimentConfig& config);
RunResult run_vaughan_check(const ExperimentConfig& config);
RunResult run_weyl(const ExperimentConfig& config);
RunResult run_series(const ExperimentConfig& config);
RunResult run_fourap(const ExperimentConfig& config);
RunResult run_lemma_suite(const ExperimentConfig& config);
RunResult run_witness(const ExperimentConfig& config);

// dispatch + file write; returns the process exit code
int run_experiment(const ExperimentConfig& config);

// polyline chart over CSV rows, a derived view that never feeds back into
// the numeric outputs
std::string csv_to_svg(const std::string& csv);

}  // namespace qfa::cli
