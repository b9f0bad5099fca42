#include <cstdio>
#include <exception>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "qcurv/catalog.hpp"
#include "qcurv/runner.hpp"

namespace {

void print_result(const qcurv::io::RunResult& res)
{
    for (const auto& line : res.summary) std::cout << line << "\n";
    std::cout << (res.ok ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Conformal curvature identity checker"};
    app.require_subcommand(1);

    std::string scenario_path;
    qcurv::io::RunOptions opt;
    std::vector<double> window;

    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON path")
        ->required();
    run->add_option("--out", opt.out_dir, "output directory");
    run->add_option("--quad-order", opt.quad_order, "quadrature order");
    run->add_option("--t-window", window, "restrict to t in [A, B]")
        ->expected(2);

    CLI::App* list = app.add_subcommand("list-catalog", "list catalog entries");

    CLI::App* verify =
        app.add_subcommand("verify-all", "run the built-in regression suite");
    verify->add_option("--out", opt.out_dir, "output directory");
    verify->add_option("--quad-order", opt.quad_order, "quadrature order");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (window.size() == 2) opt.t_window = {window[0], window[1]};
            qcurv::io::Scenario s = qcurv::io::load_scenario(scenario_path);
            qcurv::io::RunResult res = qcurv::io::run_scenario(s, opt);
            print_result(res);
            return res.ok ? 0 : 1;
        }
        if (list->parsed()) {
            std::cout << "radial profiles:\n";
            for (const auto& id : qcurv::catalog::list_ids())
                std::cout << "  " << id << "\n";
            std::cout << "q-measures:\n";
            for (const auto& id : qcurv::catalog::qmeasure_ids())
                std::cout << "  " << id << "\n";
            return 0;
        }
        if (verify->parsed()) {
            qcurv::io::RunResult res = qcurv::io::verify_all(opt);
            print_result(res);
            return res.ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
