#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wv/cli.hpp"
#include "wv/error.hpp"

namespace {

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* cap = std::getenv("WALKER_VERIFY_THREADS")) {
        int n = std::atoi(cap);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

int emit(const wv::CommandResult& result, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write to '" << out_path << "'\n";
            return 2;
        }
        out << result.output;
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"walker-verify: verification toolkit for 4d Einstein Walker spacetimes"};
    app.require_subcommand(1);

    wv::RunConfig cfg;
    std::string out_path;
    double lambda = 0.0;

    auto add_common = [&](CLI::App* cmd, bool with_metric = true) {
        if (with_metric)
            cmd->add_option("metric", cfg.source, "catalog entry name or metric file path")
                ->required();
        auto* lam = cmd->add_option("--lambda", lambda, "cosmological constant");
        cmd->add_option("--samples", cfg.samples, "number of sample points")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol", cfg.tol, "residual tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "sampling seed");
        cmd->add_option("--format", cfg.format, "output format (json|csv|text)");
        cmd->add_option("--out", out_path, "write the report to a file");
        cmd->callback([&cfg, lam, &lambda] {
            if (lam->count() > 0) {
                cfg.lambda = lambda;
                cfg.lambda_set = true;
            }
        });
    };

    auto* check = app.add_subcommand("check", "run the declared residual suites of a metric");
    add_common(check);

    auto* classify =
        app.add_subcommand("classify", "det T / Petrov type grid and holonomy verdict");
    add_common(classify);
    classify->add_option("--grid", cfg.grid, "grid spec, e.g. v=-1:1:5,x=0.4:2:4");

    auto* killing = app.add_subcommand("killing", "certify the declared Killing fields");
    add_common(killing);

    auto* gauge =
        app.add_subcommand("gauge-demo", "compare the flow transform with its closed form");
    add_common(gauge);

    auto* list = app.add_subcommand("list", "list catalog entries");
    list->add_option("--format", cfg.format, "output format (json|text)");
    list->add_option("--out", out_path, "write the report to a file");

    auto* exp = app.add_subcommand("export", "export a catalog entry as a metric file");
    add_common(exp);

    CLI11_PARSE(app, argc, argv);

    try {
        wv::CommandResult result;
        if (app.got_subcommand(check)) result = wv::cmd_check(cfg);
        else if (app.got_subcommand(classify)) result = wv::cmd_classify(cfg);
        else if (app.got_subcommand(killing)) result = wv::cmd_killing(cfg);
        else if (app.got_subcommand(gauge)) result = wv::cmd_gauge_demo(cfg);
        else if (app.got_subcommand(list)) result = wv::cmd_list(cfg);
        else if (app.got_subcommand(exp)) result = wv::cmd_export(cfg);
        return emit(result, out_path);
    } catch (const wv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
