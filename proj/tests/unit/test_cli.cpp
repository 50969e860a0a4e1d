#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/cli.hpp"

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dicke-modes");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dicke::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        FAIL("missing column " << name);
        return 0;
    }
    double at(std::size_t row, const std::string& name) const { return std::stod(rows[row][column(name)]); }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);
    csv.header = split(line);
    while (std::getline(ss, line)) csv.rows.push_back(split(line));
    return csv;
}

} // namespace

TEST_CASE("evolve: single emitter") {
    const auto r = invoke({"evolve", "--n", "1", "--grid-points", "50"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    CHECK(csv.header == std::vector<std::string>{"t", "pi_0", "pi_1"});
    for (std::size_t k = 0; k < csv.rows.size(); ++k) {
        CHECK(std::abs(csv.at(k, "pi_1") - std::exp(-csv.at(k, "t"))) < 1e-7);
    }
}

TEST_CASE("evolve: two emitters") {
    const auto r = invoke({"evolve", "--n", "2"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    CHECK(csv.rows.size() == 300);
    for (std::size_t k = 0; k < csv.rows.size(); ++k) {
        const double t = csv.at(k, "t");
        CHECK(std::abs(csv.at(k, "pi_1") - 2 * t * std::exp(-2 * t)) < 1e-7);
    }
}

TEST_CASE("evolve: rows are normalised") {
    const auto r = invoke({"evolve", "--n", "60"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    for (const auto& row : csv.rows) {
        double sum = 0.0;
        for (std::size_t c = 1; c < row.size(); ++c) sum += std::stod(row[c]);
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("intensity: mean-field peak") {
    const auto r = invoke({"intensity", "--n", "100", "--method", "meanfield", "--grid-points", "3001"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    std::size_t best = 0;
    for (std::size_t k = 0; k < csv.rows.size(); ++k)
        if (csv.at(k, "intensity") > csv.at(best, "intensity")) best = k;
    CHECK(csv.at(best, "intensity") == doctest::Approx(2500.0).epsilon(1e-4));
    CHECK(csv.at(best, "t") == doctest::Approx(0.04605).epsilon(3e-3));
    CHECK(csv.rows[best][2] == "meanfield");
}

TEST_CASE("intensity: exact photon count and blocks") {
    const auto r = invoke({"intensity", "--n", "60", "--method", "exact,eq24"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 600);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < 300; ++k) {
        total += 0.5 * (csv.at(k, "intensity") + csv.at(k + 1, "intensity")) * (csv.at(k + 1, "t") - csv.at(k, "t"));
    }
    CHECK(std::abs(total - 60.0) < 0.06);
    CHECK(csv.rows[0][2] == "exact");
    CHECK(csv.rows[300][2] == "eq24");
}

TEST_CASE("kernel: single emitter, row count, diagonal") {
    const auto r = invoke({"kernel", "--n", "1", "--grid-points", "40"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    CHECK(csv.header == std::vector<std::string>{"t", "tprime", "k"});
    CHECK(csv.rows.size() == 40 * 41 / 2);
    for (std::size_t k = 0; k < csv.rows.size(); ++k) {
        const double ref = std::exp(-0.5 * (csv.at(k, "t") + csv.at(k, "tprime")));
        CHECK(std::abs(csv.at(k, "k") - ref) <= 1e-7);
    }

    const auto kr = parse_csv(invoke({"kernel", "--n", "12", "--grid-points", "30"}).out);
    const auto ir = parse_csv(invoke({"intensity", "--n", "12", "--grid-points", "30", "--method", "exact"}).out);
    std::size_t d = 0;
    for (std::size_t k = 0; k < kr.rows.size(); ++k) {
        if (kr.rows[k][0] == kr.rows[k][1]) {
            CHECK(kr.at(k, "k") == doctest::Approx(ir.at(d, "intensity")).epsilon(1e-6));
            ++d;
        }
    }
    CHECK(d == 30);
}

TEST_CASE("modes: exact and analytic") {
    const auto exact = invoke({"modes", "--n", "60", "--method", "exact", "--format", "json"});
    REQUIRE(exact.code == 0);
    const auto doc = nlohmann::json::parse(exact.out);
    CHECK(doc["n"] == 60);
    CHECK(doc["method"] == "exact");
    CHECK(doc["fractions"].size() == 5);
    CHECK(std::abs(doc["fractions"][0].get<double>() - 0.902) <= 0.004);

    const auto big = invoke({"modes", "--n", "100000000", "--method", "appendix", "--format", "json"});
    REQUIRE(big.code == 0);
    const auto bdoc = nlohmann::json::parse(big.out);
    CHECK(std::abs(bdoc["fractions"][0].get<double>() - 0.94) <= 0.05);

    const auto csv = parse_csv(invoke({"modes", "--n", "100", "--method", "eq22", "--k-modes", "3"}).out);
    CHECK(csv.header == std::vector<std::string>{"t", "v1", "v2", "v3"});
    CHECK(csv.rows.size() == 300);
}

TEST_CASE("modes: files on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "dicke_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "modes.csv").string();
    const auto r = invoke({"modes", "--n", "30", "--k-modes", "2", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream csv(path), js((dir / "modes.occupations.json").string());
    REQUIRE(csv.good());
    REQUIRE(js.good());
    const auto doc = nlohmann::json::parse(js);
    CHECK(doc["fractions"].size() == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("doubling gamma halves times and doubles intensities") {
    const auto a = parse_csv(invoke({"intensity", "--n", "40", "--method", "exact,eq24,meanfield"}).out);
    const auto b = parse_csv(invoke({"intensity", "--n", "40", "--gamma", "2", "--method", "exact,eq24,meanfield"}).out);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(b.at(k, "t") == doctest::Approx(a.at(k, "t") / 2).epsilon(1e-11));
        CHECK(b.at(k, "intensity") == doctest::Approx(2 * a.at(k, "intensity")).epsilon(1e-11));
    }
    const auto ka = parse_csv(invoke({"kernel", "--n", "10", "--grid-points", "20"}).out);
    const auto kb = parse_csv(invoke({"kernel", "--n", "10", "--grid-points", "20", "--gamma", "2"}).out);
    for (std::size_t k = 0; k < ka.rows.size(); ++k) {
        CHECK(kb.at(k, "tprime") == doctest::Approx(ka.at(k, "tprime") / 2).epsilon(1e-11));
        CHECK(kb.at(k, "k") == doctest::Approx(2 * ka.at(k, "k")).epsilon(1e-11));
    }
}

TEST_CASE("collective time unit rescales only the time column") {
    const auto a = parse_csv(invoke({"evolve", "--n", "20", "--grid-points", "10"}).out);
    const auto b = parse_csv(invoke({"evolve", "--n", "20", "--grid-points", "10", "--time-unit", "collective"}).out);
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(b.at(k, "t") == doctest::Approx(20 * a.at(k, "t")).epsilon(1e-11));
        CHECK(b.rows[k][5] == a.rows[k][5]);
    }
}

TEST_CASE("identical invocations give identical bytes") {
    const std::vector<std::string> args{"modes", "--n", "50", "--method", "exact"};
    CHECK(invoke(args).out == invoke(args).out);
    const std::vector<std::string> json{"evolve", "--n", "5", "--format", "json", "--grid-points", "4"};
    const auto r = invoke(json);
    CHECK(r.out == invoke(json).out);
    CHECK(nlohmann::json::parse(r.out)["rows"].size() == 4);
}

TEST_CASE("explicit window") {
    const auto csv = parse_csv(invoke({"evolve", "--n", "3", "--t-end", "2.5", "--grid-points", "6"}).out);
    CHECK(csv.at(5, "t") == 2.5);
    CHECK(csv.at(1, "t") == 0.5);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"evolve"}).code == 2);
    CHECK(invoke({"evolve", "--n", "3000"}).code == 2);
    CHECK(invoke({"modes", "--n", "3000", "--method", "exact"}).code == 2);
    CHECK(invoke({"modes", "--n", "3000", "--method", "appendix", "--grid-points", "50"}).code == 0);
    CHECK(invoke({"evolve", "--n", "5", "--method", "eq22"}).code == 2);
    CHECK(invoke({"kernel", "--n", "5", "--method", "meanfield"}).code == 2);
    CHECK(invoke({"kernel", "--n", "5", "--method", "exact,eq22"}).code == 2);
    CHECK(invoke({"intensity", "--n", "5", "--method", "eq19"}).code == 2);
    CHECK(invoke({"evolve", "--n", "5", "--t-end", "-1"}).code == 2);
    CHECK(invoke({"evolve", "--n", "5", "--t-end", "soon"}).code == 2);
    CHECK(invoke({"evolve", "--n", "5", "--gamma", "0"}).code == 2);
    CHECK(invoke({"evolve", "--n", "5", "--format", "xml"}).code == 2);
    CHECK(invoke({"evolve", "--n", "5", "--bogus"}).code == 2);
    CHECK(invoke({"modes", "--n", "5", "--grid-points", "3", "--k-modes", "4"}).code == 2);
    CHECK(invoke({"modes", "--n", "1", "--method", "eq22"}).code == 2);
    const auto r = invoke({"evolve", "--n", "10", "--t-end", "1e12", "--grid-points", "2"});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
}
