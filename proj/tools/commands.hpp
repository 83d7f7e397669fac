#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace cnl::cli {

struct RunConfig {
    std::string preset = "mu";
    double k = 2.0;
    std::optional<double> x;
    std::optional<double> alpha;
    double ell = 2.0;
    std::size_t N_lhs = 200;
    std::size_t N_rhs = 200000;
    int zero_pairs = 0;  // 0 selects the preset default
    std::string format = "table";
    std::string catalog;  // empty selects $CNL_CATALOG_DIR or ./cnl-zero-cache
    std::string lhs = "natural";
    std::string hyper;  // empty selects the preset default
    double x_min = 100.0;
    double x_max = 1e6;
    int points = 41;
    std::size_t N = 1000000;
    double s_re = -0.4;
    double s_im = 0.0;
    std::optional<double> tol;
    std::string source = "zeta";
    int count = 10;
    std::size_t terms = 20;  // coeffs
    bool recompute = false;
};

enum exit_code { exit_pass = 0, exit_tolerance = 1, exit_usage = 2, exit_precision = 3 };

// Fills cfg from a JSON object whose keys are the RunConfig field names.
void load_config(const std::string& path, RunConfig& cfg);

int cmd_presets(const RunConfig& cfg, std::ostream& out);
int cmd_table(int which, const RunConfig& cfg, std::ostream& out);
int cmd_identity(const RunConfig& cfg, std::ostream& out);
int cmd_alphabeta(const RunConfig& cfg, std::ostream& out);
int cmd_zeros(const RunConfig& cfg, std::ostream& out);
int cmd_decay(const RunConfig& cfg, std::ostream& out);
int cmd_mellin(const RunConfig& cfg, std::ostream& out);
int cmd_mertens(const RunConfig& cfg, std::ostream& out);
int cmd_coeffs(const RunConfig& cfg, std::ostream& out);
int cmd_selftest(const RunConfig& cfg, std::ostream& out);

}
