#include "doctest.h"

#include <sstream>

#include "mesoent/scan_cli.hpp"

using namespace mesoent;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 0.07223418027123456}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("evolve CSV") {
    const auto r = run({"evolve", "--temperature", "0.1", "--lambda", "1", "--squeeze", "1", "--t-max", "10", "--dt", "0.01"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1002);
    CHECK(rows[0] == kCurveColumns);
    CHECK(rows[0] == std::vector<std::string>{"t", "E", "S", "Idet", "Sigma11", "Sigma22", "Sigma33", "Sigma44", "Sigmac11", "Sigmac22"});
    CHECK(std::stod(rows.back()[0]) == 10.0);
    CHECK(std::stod(rows.back()[1]) > 0.0);
    CHECK(std::abs(std::stod(rows.back()[1]) - std::stod(rows[rows.size() - 2][1])) < 1e-6);

    const auto grid = uniform_grid(10.0, 0.01);
    const auto curve = entanglement_curve(BathParams::from_temperature(0.1, 1.0, 1.0), 1.0, grid);
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
        const auto& s = curve.samples[i];
        const auto& row = rows[i + 1];
        CHECK(std::stod(row[0]) == s.t);
        CHECK(std::stod(row[1]) == s.report.e);
        CHECK(std::stod(row[2]) == s.report.s);
        CHECK(std::stod(row[3]) == s.report.idet);
        CHECK(std::stod(row[4]) == s.sigma(0, 0));
        CHECK(std::stod(row[7]) == s.sigma(3, 3));
        CHECK(std::stod(row[8]) == s.sigma(0, 2));
        CHECK(std::stod(row[9]) == s.sigma(1, 3));
    }
}

TEST_CASE("evolve output is deterministic") {
    const std::vector<std::string> args{"evolve", "--lambda", "0.7", "--t-max", "5", "--dt", "0.05"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> js{"evolve", "--format", "json", "--t-max", "2", "--dt", "0.5"};
    CHECK(run(js).out == run(js).out);
}

TEST_CASE("evolve without squeezing has zero negativity") {
    const auto r = run({"evolve", "--squeeze", "0", "--lambda", "0.8", "--t-max", "5", "--dt", "0.1"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) == 0.0);
}

TEST_CASE("evolve JSON rows are keyed by the CSV header") {
    const auto r = run({"evolve", "--format", "json", "--t-max", "1", "--dt", "0.5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    for (const auto& row : j) {
        CHECK(row.size() == kCurveColumns.size());
        for (const auto& c : kCurveColumns) CHECK(row.contains(c));
    }
    CHECK(j[2]["t"].get<double>() == 1.0);
}

TEST_CASE("report JSON keys") {
    nlohmann::json j;
    to_json(j, EntanglementReport{});
    for (const char* key : {"I1", "I2", "I3", "I4", "S", "Idet", "E", "separable"}) CHECK(j.contains(key));
    CHECK(j.size() == 8);
}

TEST_CASE("usage errors exit with 2") {
    const auto cp = run({"evolve", "--lambda", "1.5"});
    CHECK(cp.code == 2);
    CHECK(cp.err.find("lambda^2 <= 1") != std::string::npos);
    const auto both = run({"evolve", "--temperature", "0.1", "--beta", "10"});
    CHECK(both.code == 2);
    const auto bad_dt = run({"evolve", "--dt", "-1"});
    CHECK(bad_dt.code == 2);
    CHECK(bad_dt.err.find("--dt") != std::string::npos);
    CHECK(run({"evolve", "--format", "xml"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"phase", "--k-min", "1", "--k-max", "0.5", "--k-steps", "3"}).code == 2);
    CHECK(run({"phase", "--k-steps", "0"}).code == 2);
    CHECK(run({"phase", "--lambda", "0.5"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("beta is accepted in place of temperature") {
    const auto a = run({"evolve", "--beta", "10", "--t-max", "2", "--dt", "0.5"});
    const auto b = run({"evolve", "--temperature", "0.1", "--t-max", "2", "--dt", "0.5"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("phase boundary rows") {
    const auto r = run({"phase", "--k-list", "0.25,0.5,1,2"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0][0] == "k");
    CHECK(rows[0][1] == "T_c");
    CHECK(rows[0][2] == "bisection_margin");
    double prev_k = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double k = std::stod(rows[i][0]);
        const double tc = std::stod(rows[i][1]);
        CHECK(k > prev_k);
        prev_k = k;
        CHECK(std::isfinite(tc));
        CHECK(tc > 0.0);
        if (k == 1.0) CHECK(std::abs(tc - 0.75) < 0.01);
    }
    const auto j = run({"phase", "--k-list", "1", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto arr = nlohmann::json::parse(j.out);
    REQUIRE(arr.size() == 1);
    CHECK(std::abs(arr[0]["T_c"].get<double>() - 0.75) < 0.01);
}

TEST_CASE("phase bracket failure exits with 1 and marks the row") {
    const auto r = run({"phase", "--lambda", "0.5", "--allow-nonphysical-lambda", "--k-list", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("bracket_failure") != std::string::npos);
}

TEST_CASE("verify meso suite passes") {
    const auto r = run({"verify", "--suite", "meso"});
    CHECK(r.code == 0);
    CHECK(r.out.find("8/8 checks passed") != std::string::npos);
}

TEST_CASE("verify rows") {
    RunConfig cfg;
    const auto rows = run_verify_suite("meso", cfg, {100, 1000});
    CHECK(rows.size() == 8);
    for (const auto& row : rows) CHECK(row.pass);
    CHECK_THROWS_AS(run_verify_suite("nope", cfg, {100, 1000}), ValidityError);
}
