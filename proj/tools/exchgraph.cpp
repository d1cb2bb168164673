#include <CLI11.hpp>

#include <iostream>

#include "exchgraph/cli.hpp"

int main(int argc, char** argv) {
    using namespace exchgraph;
    CLI::App app{"exchangeable random directed graphs: sampling, degree laws, motifs, hubs and GF(2) kernels"};
    app.require_subcommand(1, 1);

    cli::Options opt;
    std::uint64_t seed = 0;
    std::string out;
    const std::pair<const char*, const char*> commands[] = {
        {"sample", "write one edge list per replica"},
        {"degrees", "exact and limiting degree pmfs"},
        {"motifs", "motif counts against their analytic moments"},
        {"hub", "hub statistic against its Frechet limit"},
        {"gf2", "kernel sizes, mean solution count and rate function"},
        {"report", "regime report for the power-law mixing"},
        {"mc", "Monte Carlo validation suites"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "master seed, overrides ensemble.seed");
        sub->add_option("--out", out, "output directory, overrides output_dir");
        sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)")->default_val(0);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kUsageOrIo;
    }

    const auto* chosen = app.get_subcommands().front();
    opt.command = chosen->get_name();
    if (chosen->count("--seed") > 0) opt.seed = seed;
    if (chosen->count("--out") > 0) opt.out = out;
    return cli::main_with(opt, std::cerr);
}
