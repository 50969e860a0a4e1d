#include "dicke/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dicke/analytic.hpp"
#include "dicke/appendix.hpp"
#include "dicke/error.hpp"
#include "dicke/io.hpp"
#include "dicke/ladder.hpp"
#include "dicke/modes.hpp"
#include "dicke/regression.hpp"

namespace dicke::cli {

namespace {

constexpr double kAnalyticWindowExtra = 8.0; // t_end = (ln N + 8) / (N Gamma) when no exact run fixes it

const std::map<std::string, KernelMethod, std::less<>> kKernelMethods{
    {"eq19", KernelMethod::Characteristic},
    {"eq20", KernelMethod::LargeN},
    {"eq22", KernelMethod::ExpIntegral},
    {"eq23", KernelMethod::LogApprox},
};

// The kernel tokens are accepted here as their diagonals.
const std::map<std::string, IntensityMethod, std::less<>> kIntensityMethods{
    {"eq24", IntensityMethod::ExpIntegral}, {"eq22", IntensityMethod::ExpIntegral},
    {"eq25", IntensityMethod::LogApprox},   {"eq23", IntensityMethod::LogApprox},
    {"meanfield", IntensityMethod::MeanField},
};

bool is_exact(const std::string& method) { return method == "exact"; }

void require_method(bool ok, const std::string& method, const std::string& subcommand) {
    if (!ok) {
        throw std::invalid_argument("method '" + method + "' is not available for " + subcommand);
    }
}

DickeParams exact_params(const RunConfig& config) {
    if (config.n_emitters > kMaxExactEmitters) {
        throw std::invalid_argument("exact methods are limited to N <= " + std::to_string(kMaxExactEmitters));
    }
    return DickeParams(static_cast<int>(config.n_emitters), config.gamma);
}

AnalyticParams analytic_params(const RunConfig& config) {
    return AnalyticParams(config.n_emitters, config.gamma, config.lambda);
}

double resolve_t_end(const RunConfig& config) {
    if (config.t_end) {
        if (!(*config.t_end > 0.0) || !std::isfinite(*config.t_end)) {
            throw std::invalid_argument("--t-end must be positive");
        }
        return *config.t_end;
    }
    if (config.n_emitters <= kMaxExactEmitters) {
        return auto_time_window(DickeParams(static_cast<int>(config.n_emitters), config.gamma));
    }
    const double n = static_cast<double>(config.n_emitters);
    return (std::log(n) + kAnalyticWindowExtra) / (n * config.gamma);
}

double time_scale(const RunConfig& config) {
    return config.time_unit == TimeUnit::Collective ? static_cast<double>(config.n_emitters) * config.gamma : 1.0;
}

GFunctionSet appendix_functions(const AnalyticParams& params, double t_end, std::size_t count) {
    GFunctionOptions options;
    const double needed = params.collective_rate() * t_end - std::log(params.n());
    options.tau_extra = std::max(options.tau_extra, needed);
    return make_gfunctions(params, count, options);
}

CorrelationKernel kernel_for(const RunConfig& config, const std::string& method, const TimeGrid& grid) {
    if (is_exact(method)) {
        return build_kernel(exact_params(config), grid);
    }
    if (method == "appendix") {
        const AnalyticParams params = analytic_params(config);
        const GFunctionSet gset = appendix_functions(params, grid.back(), config.k_modes + 1);
        return normalize_to_photons(CorrelationKernel{grid, reconstruct_kernel(gset, gset.count(), grid)}, params.n());
    }
    const auto found = kKernelMethods.find(method);
    require_method(found != kKernelMethods.end(), method, config.subcommand);
    return sample_kernel(found->second, grid, analytic_params(config));
}

struct Output {
    std::ofstream file;
    std::ostream* stream = nullptr;

    Output(const std::string& path, std::ostream& fallback) {
        if (path == "-") {
            stream = &fallback;
            return;
        }
        file.open(path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file " + path);
        stream = &file;
    }
    std::ostream& get() { return *stream; }
};

void emit(const RunConfig& config, const io::Table& table, std::ostream& out) {
    Output sink(config.out, out);
    if (config.format == Format::Json) {
        io::write_json(sink.get(), table);
    } else {
        io::write_csv(sink.get(), table);
    }
}

void cmd_evolve(const RunConfig& config, std::ostream& out) {
    for (const auto& method : config.methods) require_method(is_exact(method), method, config.subcommand);
    const DickeParams params = exact_params(config);
    const TimeGrid grid = TimeGrid::uniform(resolve_t_end(config), config.grid_points);
    emit(config, io::population_table(evolve(params, grid), time_scale(config)), out);
}

void cmd_intensity(const RunConfig& config, std::ostream& out) {
    const TimeGrid grid = TimeGrid::uniform(resolve_t_end(config), config.grid_points);
    io::Table table = io::intensity_table();
    for (const auto& method : config.methods) {
        std::vector<double> values;
        if (is_exact(method)) {
            values = intensity(evolve(exact_params(config), grid));
        } else {
            const auto found = kIntensityMethods.find(method);
            require_method(found != kIntensityMethods.end(), method, config.subcommand);
            values = sample_intensity(found->second, grid, analytic_params(config));
        }
        io::append_intensity(table, grid, values, method, time_scale(config));
    }
    emit(config, table, out);
}

void cmd_kernel(const RunConfig& config, std::ostream& out) {
    if (config.methods.size() != 1) throw std::invalid_argument("kernel takes exactly one method");
    const TimeGrid grid = TimeGrid::uniform(resolve_t_end(config), config.grid_points);
    emit(config, io::kernel_table(kernel_for(config, config.methods.front(), grid), time_scale(config)), out);
}

void cmd_modes(const RunConfig& config, std::ostream& out) {
    if (config.methods.size() != 1) throw std::invalid_argument("modes takes exactly one method");
    const std::string& method = config.methods.front();
    const TimeGrid grid = TimeGrid::uniform(resolve_t_end(config), config.grid_points);
    const std::size_t k = config.k_modes;
    if (k > grid.size()) throw std::invalid_argument("--k-modes exceeds --grid-points");

    ModeSet modes{grid, {}, {}, {}, 0.0};
    io::OccupationReport report{config.n_emitters, method, {}, {}};
    if (method == "appendix") {
        const AnalyticParams params = analytic_params(config);
        // one function beyond the reported modes keeps the last of them converged
        const GFunctionSet gset = appendix_functions(params, grid.back(), k + 1);
        const GramSolution solution = solve_modes(overlap_matrix(gset), gset.count());
        modes = assemble_modes(solution, gset, grid);
        report.fractions.assign(solution.fractions.begin(), solution.fractions.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
        modes = decompose(kernel_for(config, method, grid), k);
        const std::vector<double> fractions = occupation_fractions(modes);
        report.fractions.assign(fractions.begin(), fractions.begin() + static_cast<std::ptrdiff_t>(k));
    }
    report.occupations.assign(modes.occupations.begin(), modes.occupations.begin() + static_cast<std::ptrdiff_t>(k));

    if (config.format == Format::Json) {
        Output sink(config.out, out);
        io::write_occupations(sink.get(), report);
        return;
    }
    {
        Output sink(config.out, out);
        io::write_csv(sink.get(), io::modes_table(modes, k, time_scale(config)));
    }
    if (config.out != "-") {
        std::filesystem::path sidecar(config.out);
        sidecar.replace_extension(".occupations.json");
        Output sink(sidecar.string(), out);
        io::write_occupations(sink.get(), report);
    }
}

std::vector<std::string> default_methods(const RunConfig& config) {
    const bool exact_ok = config.n_emitters <= kMaxExactEmitters;
    if (config.subcommand == "intensity") return {exact_ok ? "exact" : "eq24"};
    if (config.subcommand == "modes") return {exact_ok ? "exact" : "appendix"};
    return {"exact"};
}

double parse_t_end(const std::string& text) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw std::invalid_argument("--t-end must be 'auto' or a number");
    }
    return value;
}

} // namespace

void execute(const RunConfig& config, std::ostream& out) {
    if (config.n_emitters < 1) throw std::invalid_argument("--n must be >= 1");
    if (!(config.gamma > 0.0) || !std::isfinite(config.gamma)) throw std::invalid_argument("--gamma must be positive");
    if (config.grid_points < 2) throw std::invalid_argument("--grid-points must be >= 2");
    if (config.k_modes < 1) throw std::invalid_argument("--k-modes must be >= 1");

    RunConfig resolved = config;
    if (resolved.methods.empty()) resolved.methods = default_methods(resolved);

    if (resolved.subcommand == "evolve") {
        cmd_evolve(resolved, out);
    } else if (resolved.subcommand == "intensity") {
        cmd_intensity(resolved, out);
    } else if (resolved.subcommand == "kernel") {
        cmd_kernel(resolved, out);
    } else if (resolved.subcommand == "modes") {
        cmd_modes(resolved, out);
    } else {
        throw std::invalid_argument("unknown subcommand " + resolved.subcommand);
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Temporal radiation modes of Dicke superradiance", "dicke-modes"};
    app.require_subcommand(1);

    RunConfig config;
    std::string t_end = "auto";
    std::string format = "csv";
    std::string unit = "gamma";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", config.n_emitters, "number of emitters N")->required()->check(CLI::PositiveNumber);
        sub->add_option("--gamma", config.gamma, "single-emitter decay rate")->check(CLI::PositiveNumber);
        sub->add_option("--lambda", config.lambda, "initial-profile width of the analytic model")
            ->check(CLI::PositiveNumber);
        sub->add_option("--grid-points", config.grid_points, "time samples K")->check(CLI::Range(2, 100000));
        sub->add_option("--t-end", t_end, "window end in units of 1/gamma, or auto");
        sub->add_option("--k-modes", config.k_modes, "modes to report")->check(CLI::Range(1, 100000));
        sub->add_option("--method", config.methods, "comma-separated method list")->delimiter(',');
        sub->add_option("--out", config.out, "output path, - for stdout");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--time-unit", unit, "gamma: t; collective: N gamma t")
            ->check(CLI::IsMember({"gamma", "collective"}));
    };
    add_common(app.add_subcommand("evolve", "ladder populations pi_m(t)"));
    add_common(app.add_subcommand("intensity", "emitted intensity I(t)"));
    add_common(app.add_subcommand("kernel", "two-time correlation kernel"));
    add_common(app.add_subcommand("modes", "temporal modes and occupations"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kArgumentError;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = format == "json" ? Format::Json : Format::Csv;
    config.time_unit = unit == "collective" ? TimeUnit::Collective : TimeUnit::Gamma;

    try {
        if (t_end != "auto") config.t_end = parse_t_end(t_end);
        execute(config, out);
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kOk;
}

} // namespace dicke::cli
