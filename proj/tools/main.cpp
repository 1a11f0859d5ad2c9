#include <CLI11.hpp>

#include "qfa/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"quadratic Fourier analysis laboratory over Z/NZ"};
    app.require_subcommand(0, 1);

    qfa::cli::ExperimentConfig config;
    std::string config_path;
    std::vector<std::uint64_t> n_values;
    std::vector<std::uint64_t> seeds;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", n_values, "problem sizes, ascending");
        sub->add_option("--seed", seeds, "experiment seeds");
        sub->add_option("--out", config.out, "output file (stdout when absent)");
        sub->add_option("--format", config.format, "csv, json, or svg");
        sub->add_option("--threads", config.threads, "worker cap, 0 = hardware");
        sub->add_option("--config", config_path, "JSON config file (overrides flags)");
    };

    CLI::App* norms = app.add_subcommand("norms", "Gowers norm rows for the configured sizes");
    add_common(norms);
    CLI::App* decay = app.add_subcommand("decay-scan", "uniformity decay ladder for mu");
    add_common(decay);
    CLI::App* bohr = app.add_subcommand("bohr", "build a regular Bohr set and print it");
    add_common(bohr);
    bohr->add_option("--rho", config.rho, "target radius");
    bohr->add_option("--freqs", config.freqs, "frequency set (always joined by 1)");
    CLI::App* vaughan = app.add_subcommand("vaughan-check", "bilinear reconstruction defect");
    add_common(vaughan);
    vaughan->add_option("--u", config.u, "first cutoff");
    vaughan->add_option("--v", config.v, "second cutoff");
    CLI::App* weyl = app.add_subcommand("weyl", "exponential sum over a box");
    add_common(weyl);
    weyl->add_option("--coeffs", config.coeffs_path, "polynomial JSON file")->required();
    weyl->add_option("--box", config.box_spec, "box spec lo:hi,lo:hi")->required();
    CLI::App* series = app.add_subcommand("series", "singular series for a JSON system");
    add_common(series);
    series->add_option("--system", config.system_path, "system JSON file")->required();
    series->add_option("--pmax", config.pmax, "local factor truncation");
    CLI::App* fourap = app.add_subcommand("fourap", "length-4 progression experiment");
    add_common(fourap);
    fourap->add_option("--pmax", config.pmax, "local factor truncation");
    CLI::App* lemmas = app.add_subcommand("lemmas", "seeded verifier suites");
    add_common(lemmas);
    lemmas->add_option("--suite", config.suites, "suite selection");
    lemmas->add_flag("--inject-defect", config.inject_defect, "negative control");
    CLI::App* witness = app.add_subcommand("witness", "quadratic phase recovery trials");
    add_common(witness);
    witness->add_option("--trials", config.trials, "number of seeded trials");

    CLI11_PARSE(app, argc, argv);

    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return qfa::cli::exit_config_error;
    }
    config.command = app.get_subcommands().front()->get_name();
    if (!n_values.empty()) config.n_values = n_values;
    if (!seeds.empty()) config.seeds = seeds;

    if (!config_path.empty()) {
        try {
            qfa::cli::ExperimentConfig from_file = qfa::cli::config_from_json_file(config_path);
            if (from_file.command.empty()) from_file.command = config.command;
            config = from_file;
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return qfa::cli::exit_config_error;
        }
    }
    return qfa::cli::run_experiment(config);
}
