// io.hpp: plot-ready tables and the occupations report.
//
// Numbers are written with 12 significant digits, '.' decimal, locale independent.
// Time columns are multiplied by `time_scale` at write time only.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dicke/ladder.hpp"
#include "dicke/modes.hpp"
#include "dicke/regression.hpp"
#include "dicke/time_grid.hpp"

namespace dicke::io {

std::string format_number(double value);

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& table);
// {"columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& out, const Table& table);

// t,pi_0,...,pi_N
Table population_table(const PopulationTrajectory& trajectory, double time_scale = 1.0);

// t,intensity,method; call repeatedly on the same table for one block per method.
void append_intensity(Table& table, const TimeGrid& grid, std::span<const double> intensity, std::string_view method,
                      double time_scale = 1.0);
Table intensity_table();

// t,tprime,k over the upper triangle, row-major.
Table kernel_table(const CorrelationKernel& kernel, double time_scale = 1.0);

// t,v1..vk
Table modes_table(const ModeSet& modes, std::size_t k, double time_scale = 1.0);

struct OccupationReport {
    long long n = 0;
    std::string method;
    std::vector<double> occupations;
    std::vector<double> fractions;
};

void write_occupations(std::ostream& out, const OccupationReport& report);

} // namespace dicke::io
