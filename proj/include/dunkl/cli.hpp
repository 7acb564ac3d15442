#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/dunkl_operators.hpp"
#include "dunkl/propagators.hpp"

namespace dunkl::cli {

enum ExitCode : int { ok = 0, validation_failed = 1, config_error = 2, numerical_failure = 3 };

struct RunConfig {
    std::string command;
    System system = System::harmonic;
    std::optional<double> nu;
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
    std::optional<double> time;  // real time
    std::optional<double> tau;   // Euclidean time
    std::vector<double> xa, xb;
    double grid_L = 12.0;
    int grid_M = 2000;
    bool grid_given = false;
    int nmax = 8;
    std::string out;
    std::string format = "csv";
    bool strict = false;
    double tol = 1e-4;
    std::vector<std::string> only;

    DunklParams params() const;
    /// Throws std::invalid_argument on any inconsistency.
    void validate() const;
};

/// Entry point of the dunklqm tool. Data goes to `out` unless --out names a file;
/// diagnostics and usage go to `err`. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dunkl::cli
