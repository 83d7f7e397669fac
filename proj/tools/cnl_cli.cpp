#include "commands.hpp"

#include "cnl/numeric.hpp"

#include <CLI11.hpp>

#include <cstring>
#include <iostream>

using namespace cnl::cli;

namespace {

// --config is applied before the flags so that explicit flags win
std::string find_config(int argc, char** argv)
{
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc)
            return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0)
            return argv[i] + 9;
    }
    return {};
}

}

int main(int argc, char** argv)
{
    RunConfig cfg;
    try {
        if (auto path = find_config(argc, argv); !path.empty())
            load_config(path, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    CLI::App app{"Dirichlet-series identity evaluator and criteria probes"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with RunConfig keys");
    app.add_option("--preset", cfg.preset, "mu, epstein, dedekind:D, sigma:r or delta");
    app.add_option("--k", cfg.k, "shift k");
    app.add_option("--x", cfg.x, "evaluation point x > 0");
    app.add_option("--alpha", cfg.alpha, "alpha for the symmetric form (default: the symmetric point)");
    app.add_option("--ell", cfg.ell, "exponent ell of the smoothing weight");
    app.add_option("--N-lhs,--N_lhs", cfg.N_lhs, "terms in the left-hand sum");
    app.add_option("--N-rhs,--N_rhs", cfg.N_rhs, "terms in the hypergeometric sum");
    app.add_option("--zero-pairs,--zero_pairs", cfg.zero_pairs, "conjugate zero pairs per source (0 = preset default)");
    app.add_option("--format", cfg.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--catalog", cfg.catalog, "zero catalog file (default $CNL_CATALOG_DIR/zeros.tsv)");
    app.add_option("--lhs", cfg.lhs, "natural or regularized")->check(CLI::IsMember({"natural", "regularized"}));
    app.add_option("--hyper", cfg.hyper, "subtracted or bare")->check(CLI::IsMember({"subtracted", "bare"}));
    app.add_option("--tol", cfg.tol, "pass tolerance (command specific)");
    app.add_flag("--recompute", cfg.recompute, "regenerate cached zeros");

    app.add_subcommand("presets", "list the preset catalog");
    app.add_subcommand("table1", "reproduce the Dedekind/Epstein verification table");
    app.add_subcommand("table2", "reproduce the divisor-function verification table");
    app.add_subcommand("identity", "evaluate both sides of the identity at (k, x)");
    app.add_subcommand("alphabeta", "evaluate the symmetric alpha-beta form");
    auto* zeros = app.add_subcommand("zeros", "list (and cache) critical-line zeros");
    zeros->add_option("--source", cfg.source, "zeta, beta, chi_D or delta");
    zeros->add_option("--count", cfg.count, "number of zeros");
    auto* decay = app.add_subcommand("decay", "envelope decay probe of the smoothed inverse sum");
    decay->add_option("--x-min,--x_min", cfg.x_min, "first grid point");
    decay->add_option("--x-max,--x_max", cfg.x_max, "last grid point");
    decay->add_option("--points", cfg.points, "grid points");
    decay->add_option("--N", cfg.N, "terms of the inverse table");
    auto* mellin = app.add_subcommand("mellin", "Mellin transform check");
    mellin->add_option("--s-re,--s_re", cfg.s_re, "Re s");
    mellin->add_option("--s-im,--s_im", cfg.s_im, "Im s");
    mellin->add_option("--N", cfg.N, "terms of the inverse table");
    auto* mertens = app.add_subcommand("mertens", "summatory function of the inverse coefficients");
    mertens->add_option("--x-max,--x_max", cfg.x_max, "last checkpoint");
    auto* coeffs = app.add_subcommand("coeffs", "coefficient table as CSV");
    coeffs->add_option("--terms", cfg.terms, "table length");
    app.add_subcommand("selftest", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_pass : exit_usage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "presets")
            return cmd_presets(cfg, std::cout);
        if (cmd == "table1")
            return cmd_table(1, cfg, std::cout);
        if (cmd == "table2")
            return cmd_table(2, cfg, std::cout);
        if (cmd == "identity")
            return cmd_identity(cfg, std::cout);
        if (cmd == "alphabeta")
            return cmd_alphabeta(cfg, std::cout);
        if (cmd == "zeros")
            return cmd_zeros(cfg, std::cout);
        if (cmd == "decay")
            return cmd_decay(cfg, std::cout);
        if (cmd == "mellin")
            return cmd_mellin(cfg, std::cout);
        if (cmd == "mertens")
            return cmd_mertens(cfg, std::cout);
        if (cmd == "coeffs")
            return cmd_coeffs(cfg, std::cout);
        if (cmd == "selftest")
            return cmd_selftest(cfg, std::cout);
    } catch (const cnl::precision_loss& e) {
        std::cerr << "precision error: " << e.what() << '\n';
        return exit_precision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
