#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qfa/cli.hpp"
#include "qfa/util.hpp"

using namespace qfa;
using cli::ExperimentConfig;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("config parsing accepts the documented keys and rejects others") {
        ExperimentConfig c = cli::config_from_json(
            R"({"command":"norms","n":[256,512],"seeds":[3],"format":"csv","threads":2})");
        CHECK(c.command == "norms");
        CHECK(c.n_values == std::vector<std::uint64_t>{256, 512});
        CHECK(c.seeds == std::vector<std::uint64_t>{3});

        CHECK_THROWS_AS(cli::config_from_json(R"({"command":"norms","bogus":1})"),
                        std::invalid_argument);
        CHECK_THROWS_AS(cli::config_from_json(R"({"n":[512,256]})"), std::invalid_argument);
        CHECK_THROWS_AS(cli::config_from_json(R"({"n":[0]})"), std::invalid_argument);
        CHECK_THROWS_AS(cli::config_from_json(R"({"format":"xml"})"), std::invalid_argument);
        CHECK_THROWS_AS(cli::config_from_json("not json"), std::invalid_argument);
    }

    TEST_CASE("norm scan emits calibrated rows") {
        ExperimentConfig c;
        c.command = "norms";
        c.n_values = {64, 128};
        cli::RunResult res = cli::run_norm_scan(c);
        CHECK(res.exit_code == cli::exit_ok);
        CHECK(res.output.rfind("N,s,function,norm\n", 0) == 0);
        // the constant calibration rows are exactly 1
        CHECK(res.output.find("64,2,const,1\n") != std::string::npos);
        CHECK(res.output.find("128,2,const,1\n") != std::string::npos);
        // u3 rows appear for small sizes
        CHECK(res.output.find("64,3,mu,") != std::string::npos);
    }

    TEST_CASE("experiments are deterministic across thread counts") {
        for (const char* command : {"norms", "fourap", "witness", "lemmas", "bohr"}) {
            ExperimentConfig c;
            c.command = command;
            c.n_values = {command == std::string("witness")   ? std::uint64_t(257)
                          : command == std::string("fourap") ? std::uint64_t(5000)
                                                             : std::uint64_t(512)};
            if (command == std::string("bohr")) c.n_values = {4096};
            c.seeds = {12345};
            c.trials = 3;
            c.format = command == std::string("norms") || command == std::string("witness")
                           ? "csv"
                           : "json";

            set_worker_threads(1);
            std::string first;
            {
                cli::RunResult r = [&] {
                    if (c.command == "norms") return cli::run_norm_scan(c);
                    if (c.command == "fourap") return cli::run_fourap(c);
                    if (c.command == "witness") return cli::run_witness(c);
                    if (c.command == "lemmas") return cli::run_lemma_suite(c);
                    return cli::run_bohr(c);
                }();
                first = r.output;
            }
            set_worker_threads(8);
            std::string second;
            {
                cli::RunResult r = [&] {
                    if (c.command == "norms") return cli::run_norm_scan(c);
                    if (c.command == "fourap") return cli::run_fourap(c);
                    if (c.command == "witness") return cli::run_witness(c);
                    if (c.command == "lemmas") return cli::run_lemma_suite(c);
                    return cli::run_bohr(c);
                }();
                second = r.output;
            }
            set_worker_threads(0);
            CHECK(first == second);
            CHECK(!first.empty());
        }
    }

    TEST_CASE("lemma suite passes clean and fails the negative control") {
        ExperimentConfig c;
        c.command = "lemmas";
        c.seeds = {5};
        cli::RunResult clean = cli::run_lemma_suite(c);
        CHECK(clean.exit_code == cli::exit_ok);
        CHECK(clean.output.find("\"philemma\"") != std::string::npos);
        CHECK(clean.output.find("\"pass\":false") == std::string::npos);

        c.inject_defect = true;
        cli::RunResult bad = cli::run_lemma_suite(c);
        CHECK(bad.exit_code == cli::exit_tolerance_failure);
        CHECK(bad.output.find("\"pass\":false") != std::string::npos);

        ExperimentConfig empty;
        empty.command = "lemmas";
        empty.suites = {};
        CHECK_THROWS_AS(cli::run_lemma_suite(empty), std::invalid_argument);
    }

    TEST_CASE("witness trials recover their plants") {
        ExperimentConfig c;
        c.command = "witness";
        c.n_values = {1021};
        c.seeds = {7};
        c.trials = 3;
        cli::RunResult res = cli::run_witness(c);
        CHECK(res.exit_code == cli::exit_ok);
        CHECK(res.output.rfind("trial,a,b,found_a,found_b,correlation\n", 0) == 0);
    }

    TEST_CASE("vaughan check reports tiny defects") {
        ExperimentConfig c;
        c.command = "vaughan-check";
        c.n_values = {2000};
        c.u = 6;
        c.v = 6;
        c.format = "json";
        cli::RunResult res = cli::run_vaughan_check(c);
        CHECK(res.exit_code == cli::exit_ok);
        CHECK(res.output.find("max_defect_lambda") != std::string::npos);

        c.format = "csv";
        cli::RunResult csv = cli::run_vaughan_check(c);
        CHECK(csv.output.rfind("d,a_d\n", 0) == 0);
    }

    TEST_CASE("svg is a derived view that leaves the csv alone") {
        ExperimentConfig c;
        c.command = "norms";
        c.n_values = {64, 128, 256};
        cli::RunResult res = cli::run_norm_scan(c);
        std::string csv_before = res.output;
        std::string svg = cli::csv_to_svg(res.output);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("polyline") != std::string::npos);
        CHECK(res.output == csv_before);

        cli::RunResult again = cli::run_norm_scan(c);
        CHECK(again.output == csv_before);
    }

    TEST_CASE("run_experiment writes files and maps errors to exit codes") {
        ExperimentConfig c;
        c.command = "norms";
        c.n_values = {64};
        c.out = "cli_test_norms.csv";
        CHECK(cli::run_experiment(c) == cli::exit_ok);
        std::string file = read_file(c.out);
        CHECK(file.rfind("N,s,function,norm\n", 0) == 0);
        std::remove(c.out.c_str());

        ExperimentConfig bad;
        bad.command = "definitely-not-a-command";
        CHECK(cli::run_experiment(bad) == cli::exit_config_error);

        // malformed config: nonzero exit and no partial file
        ExperimentConfig invalid;
        invalid.command = "vaughan-check";
        invalid.n_values = {100};
        invalid.u = 50;
        invalid.v = 50;  // UV > N
        invalid.out = "cli_test_should_not_exist.json";
        CHECK(cli::run_experiment(invalid) == cli::exit_config_error);
        std::ifstream ghost(invalid.out);
        CHECK(!ghost.good());

        // tolerance failures surface as exit 3
        ExperimentConfig inject;
        inject.command = "lemmas";
        inject.inject_defect = true;
        inject.out = "cli_test_lemmas.json";
        CHECK(cli::run_experiment(inject) == cli::exit_tolerance_failure);
        std::remove(inject.out.c_str());
    }

    TEST_CASE("weyl subcommand reads a polynomial file and flags near-rational phases") {
        {
            std::ofstream f("cli_test_poly.json");
            f << R"({"dimension":1,"degree_caps":[2],"coeffs":[{"exponents":[2],"value":0.2000000001}]})";
        }
        ExperimentConfig c;
        c.command = "weyl";
        c.coeffs_path = "cli_test_poly.json";
        c.box_spec = "1:10000";
        cli::RunResult res = cli::run_weyl(c);
        CHECK(res.exit_code == cli::exit_ok);
        // alpha close to 1/5 keeps a fifth of the phases at zero: a large sum
        CHECK(res.output.find("recovered_rationals") != std::string::npos);
        CHECK(res.output.find("\"q\":5") != std::string::npos);
        std::remove("cli_test_poly.json");

        c.box_spec = "1:100,1:100";  // wrong dimension
        {
            std::ofstream f("cli_test_poly.json");
            f << R"({"dimension":1,"coeffs":[{"exponents":[2],"value":0.5}]})";
        }
        CHECK_THROWS_AS(cli::run_weyl(c), std::invalid_argument);
        std::remove("cli_test_poly.json");
    }

    TEST_CASE("series subcommand computes the product for a JSON system") {
        {
            std::ofstream f("cli_test_system.json");
            f << R"({"matrix":[[1,0],[1,1],[1,2],[1,3]],"constants":[0,0,0,0],"samples":20000})";
        }
        ExperimentConfig c;
        c.command = "series";
        c.system_path = "cli_test_system.json";
        c.n_values = {10000};
        c.pmax = 100;
        c.seeds = {3};
        cli::RunResult res = cli::run_series(c);
        CHECK(res.exit_code == cli::exit_ok);
        CHECK(res.output.find("\"beta_p\":[{\"p\":2,\"beta\":4}") != std::string::npos);
        std::remove("cli_test_system.json");
    }

    TEST_CASE("fourap json has the pinned fields") {
        ExperimentConfig c;
        c.command = "fourap";
        c.n_values = {2000};
        c.pmax = 50;
        cli::RunResult res = cli::run_fourap(c);
        for (const char* key : {"\"lhs\":", "\"series\":", "\"beta_p\":", "\"beta_inf\":", "\"gap\":"})
            CHECK(res.output.find(key) != std::string::npos);
    }
}
