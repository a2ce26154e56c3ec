// SPDX-License-Identifier: Apache-2.0
//
// dstm-sim <correlation|pep-bound|ser-sweep|adaptive> [--config PATH]
//          [--preset NAME] [--seed U64] [--out PATH] [--emit-plot]
#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "dstm/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Differential space-time modulation over spatially-temporally correlated channels"};
    app.require_subcommand(1, 1);

    dstm::cli::CommandOptions opts;
    std::uint64_t seed = 0;
    int workers = 0;
    const std::pair<const char*, const char*> commands[] = {
        {"correlation", "correlation case, lag and coefficients per sweep point"},
        {"pep-bound", "worst-pair error probability bound and floor per sweep point"},
        {"ser-sweep", "Monte Carlo symbol error rate with 95% Wilson intervals"},
        {"adaptive", "block length chosen by each adaptation policy, plus the velocity threshold"}};
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", opts.config_path, "key = value configuration file");
        sub->add_option("--preset", opts.preset, "fig5, fig7, fig8, fig9 or fig10");
        sub->add_option("--seed", seed, "base seed (overrides the config)");
        sub->add_option("--workers", workers, "worker threads, 0 = all cores");
        sub->add_option("--out", opts.out, "CSV path; a .manifest is written next to it");
        sub->add_flag("--emit-plot", opts.emit_plot, "also write <out>.gp (ser-sweep)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dstm::cli::kConfigError;
    }
    const CLI::App* chosen = app.get_subcommands().front();
    opts.command = chosen->get_name();
    if (chosen->count("--seed")) opts.seed = seed;
    if (chosen->count("--workers")) opts.workers = workers;
    return dstm::cli::run_command(opts, std::cout, std::cerr);
}
