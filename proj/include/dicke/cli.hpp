// cli.hpp: the dicke-modes command line.
//
//   dicke-modes evolve    --n 60
//   dicke-modes intensity --n 200 --method exact,eq24
//   dicke-modes kernel    --n 1 --grid-points 50 --out kernel.csv
//   dicke-modes modes     --n 100000000 --method appendix --format json

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dicke::cli {

enum ExitCode : int { kOk = 0, kArgumentError = 2, kNumericalFailure = 3 };

enum class TimeUnit { Gamma, Collective };
enum class Format { Csv, Json };

struct RunConfig {
    std::string subcommand;
    std::int64_t n_emitters = 0;
    double gamma = 1.0;
    double lambda = 0.96;
    std::size_t grid_points = 300;
    std::optional<double> t_end; // empty means auto
    std::size_t k_modes = 5;
    std::vector<std::string> methods;
    std::string out = "-";
    Format format = Format::Csv;
    TimeUnit time_unit = TimeUnit::Gamma;
};

// Parses and runs one invocation. Data goes to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs an already-parsed configuration; throws on invalid input or numerical failure.
void execute(const RunConfig& config, std::ostream& out);

} // namespace dicke::cli
