// cosco: run the EC/CC solvers on the built-in benchmark problems and emit
// CSV reports. Subcommands: run (single), sweep (grid), report (re-aggregate).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "cosco/harness.hpp"

namespace {

std::uint64_t resolve_master_seed(bool seed_given, std::uint64_t seed_flag) {
    if (seed_given) return seed_flag;
    if (const char* env = std::getenv("COSCO_MASTER_SEED")) {
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(env, &pos);
            if (pos != std::string(env).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "COSCO_MASTER_SEED must be an unsigned integer, got '" + std::string(env) + "'");
        }
    }
    return 0;
}

void write_or_print(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"primal-dual stochastic compositional solvers with expectation constraints"};
    app.require_subcommand(1);

    std::string config_path, out_path, report_in;
    std::size_t workers = 1;
    std::uint64_t master_seed = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* cfg = sub->add_option("--config", config_path, "configuration file");
        if (needs_config) cfg->required();
        sub->add_option("--out", out_path, "output path");
        sub->add_option("--master-seed", master_seed, "master seed (fallback: COSCO_MASTER_SEED)")
            ->each([&](const std::string&) { seed_given = true; });
    };

    auto* run = app.add_subcommand("run", "execute a single run (config with one N, one seed)");
    add_common(run, true);

    auto* sweep = app.add_subcommand("sweep", "execute the full (N x seed) grid");
    add_common(sweep, true);
    sweep->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    auto* report = app.add_subcommand("report", "re-aggregate an existing raw CSV");
    report->add_option("csv", report_in, "raw records CSV")->required();
    report->add_option("--out", out_path, "output path for the rewritten report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (report->parsed()) {
            std::ifstream in(report_in);
            if (!in) {
                std::cerr << "error: cannot open " << report_in << "\n";
                return 1;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            const auto records = cosco::parse_records_csv(buf.str());
            const std::string target = out_path.empty() ? report_in : out_path;
            std::cout << cosco::emit_report(records, target);
            return 0;
        }

        cosco::RunConfig cfg;
        std::uint64_t seed;
        try {
            cfg = cosco::load_config(config_path);
            seed = resolve_master_seed(seed_given, master_seed);
            if (run->parsed() && (cfg.n_values.size() != 1 || cfg.seeds.size() != 1))
                throw std::invalid_argument(
                    "subcommand 'run' requires exactly one N and one seed; use 'sweep' for grids");
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        if (out_path.empty()) out_path = cfg.out_path;

        const auto records = cosco::run_sweep(cfg, seed, run->parsed() ? 1 : workers);
        if (out_path.empty()) {
            std::cout << cosco::records_to_csv(records);
        } else {
            std::cout << cosco::emit_report(records, out_path);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
