#include "dicke/io.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include <json.hpp>

#include "dicke/error.hpp"

namespace dicke::io {

namespace {

constexpr int kSignificantDigits = 12;

void write_cell(std::ostream& out, const Cell& cell) {
    if (const auto* number = std::get_if<double>(&cell)) {
        out << format_number(*number);
    } else {
        out << std::get<std::string>(cell);
    }
}

} // namespace

std::string format_number(double value) {
    std::array<char, 64> buffer{};
    const auto [end, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::general, kSignificantDigits);
    if (ec != std::errc{}) {
        throw NumericalFailure("number formatting failed");
    }
    return {buffer.data(), end};
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out << ',';
        out << table.header[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            write_cell(out, row[c]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::ordered_json doc;
    doc["columns"] = table.header;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto entry = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            std::visit([&](const auto& v) { entry.push_back(v); }, cell);
        }
        rows.push_back(std::move(entry));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(1) << '\n';
}

Table population_table(const PopulationTrajectory& trajectory, double time_scale) {
    Table table;
    table.header.push_back("t");
    const int n = trajectory.params.n_emitters();
    for (int m = 0; m <= n; ++m) table.header.push_back("pi_" + std::to_string(m));
    for (const auto& state : trajectory.states) {
        std::vector<Cell> row;
        row.reserve(state.populations.size() + 1);
        row.emplace_back(state.time * time_scale);
        for (double p : state.populations) row.emplace_back(p);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table intensity_table() { return Table{{"t", "intensity", "method"}, {}}; }

void append_intensity(Table& table, const TimeGrid& grid, std::span<const double> intensity, std::string_view method,
                      double time_scale) {
    if (intensity.size() != grid.size()) {
        throw DomainError("intensity samples do not match the grid");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        table.rows.push_back({grid[k] * time_scale, intensity[k], std::string(method)});
    }
}

Table kernel_table(const CorrelationKernel& kernel, double time_scale) {
    Table table{{"t", "tprime", "k"}, {}};
    const std::size_t K = kernel.grid.size();
    table.rows.reserve(K * (K + 1) / 2);
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = i; j < K; ++j) {
            table.rows.push_back({kernel.grid[i] * time_scale, kernel.grid[j] * time_scale,
                                  kernel.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
        }
    }
    return table;
}

Table modes_table(const ModeSet& modes, std::size_t k, double time_scale) {
    if (k > modes.mode_count()) {
        throw DomainError("requested more modes than were computed");
    }
    Table table;
    table.header.push_back("t");
    for (std::size_t i = 1; i <= k; ++i) table.header.push_back("v" + std::to_string(i));
    const std::size_t K = modes.grid.size();
    for (std::size_t t = 0; t < K; ++t) {
        std::vector<Cell> row;
        row.emplace_back(modes.grid[t] * time_scale);
        for (std::size_t i = 0; i < k; ++i) {
            row.emplace_back(modes.modes(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_occupations(std::ostream& out, const OccupationReport& report) {
    nlohmann::ordered_json doc;
    doc["n"] = report.n;
    doc["method"] = report.method;
    doc["occupations"] = report.occupations;
    doc["fractions"] = report.fractions;
    out << doc.dump(2) << '\n';
}

} // namespace dicke::io
