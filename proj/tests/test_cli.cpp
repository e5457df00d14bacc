#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "wormhole/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "wormhole");
    std::ostringstream out, err;
    const int code = wormhole::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
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

std::string error_code(const Result& r) { return json::parse(r.err).at("error").get<std::string>(); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("graph lists colored components") {
    const auto r = invoke({"graph", "--n", "15", "--alphas", "2,7"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["N"] == 15);
    CHECK(j["components"].size() == 3);
    std::size_t vertices = 0;
    for (const auto& c : j["components"]) vertices += c["vertices"].size();
    CHECK(vertices == 14);

    const auto csv = invoke({"graph", "--n", "15", "--alphas", "2", "--format", "csv"});
    const auto rows = csv_rows(csv.out);
    CHECK(rows[0] == std::vector<std::string>{"component", "class", "vertex"});
    CHECK(rows.size() == 15);

    const auto bad = invoke({"graph", "--n", "15", "--alphas", "3"});
    CHECK(bad.code == 2);
    CHECK(error_code(bad) == "invalid-alpha");
    CHECK(invoke({"graph", "--n", "13", "--alphas", "2"}).code == 2);
    CHECK(invoke({"graph", "--bogus"}).code == 2);
}

TEST_CASE("cycles reports formula and traversal") {
    const json j = json::parse(invoke({"cycles", "--n", "55", "--alphas", "3"}).out);
    CHECK(j["traversal"]["total"] == 5);
    CHECK(j["formula"]["total"] == 5);
    CHECK(j["agree"] == true);
    const json k = json::parse(invoke({"cycles", "--n", "15", "--alphas", "2"}).out);
    CHECK(k["formula"]["red"] == 1);
    CHECK(k["formula"]["blue"] == 1);
    CHECK(k["formula"]["black"] == 2);
    const json u = json::parse(invoke({"cycles", "--n", "15", "--alphas", "2,7"}).out);
    CHECK(u["formula"].is_null());
    CHECK(u["traversal"]["total"] == 3);
}

TEST_CASE("mark-prob exact and sampled rows") {
    const auto r = invoke({"mark-prob", "--n", "15", "--alphas", "2", "--exact"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"alpha", "k", "trials", "successes", "p_hat", "std_err"});
    CHECK(rows.size() == 14);
    for (const auto& row : rows) {
        if (row[1] == "4") CHECK(std::abs(std::stod(row[4]) - 0.468) <= 0.02);
    }
    const auto top = csv_rows(invoke({"mark-prob", "--n", "15", "--alphas", "2", "--k", "13", "--exact"}).out);
    CHECK(std::stod(top[1][4]) == 0.0);

    const json j = json::parse(invoke({"mark-prob", "--n", "15", "--alphas", "2,7", "--union", "--k", "1",
                                       "--trials", "5000", "--format", "json"})
                                   .out);
    CHECK(j["rows"][0]["alpha"] == "2+7");
    CHECK(std::abs(j["rows"][0]["p_hat"].get<double>() - 8.0 / 14.0) < 0.03);
    CHECK(invoke({"mark-prob", "--n", "15", "--alphas", "2", "--mode", "loose"}).code == 2);
}

TEST_CASE("mark-prob on N = 703 never reaches certainty for alpha = 2") {
    const auto r = invoke({"mark-prob", "--n", "703", "--alphas", "2", "--trials", "200", "--k-min", "1",
                           "--k-max", "701"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    double best = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) best = std::max(best, std::stod(rows[i][4]));
    CHECK(best < 1.0);
    CHECK(best > 0.0);
}

TEST_CASE("walk trace and limit") {
    const auto r = invoke({"walk", "--n", "15", "--alphas", "2,7", "--marks", "2,11"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"t", "vertex", "probability"});
    CHECK((rows.size() - 1) % 14 == 0);
    const std::string last_t = rows.back()[0];
    for (const auto& row : rows) {
        if (row[0] != last_t) continue;
        const int v = std::stoi(row[1]);
        const bool support = v % 3 == 0 || v % 5 == 0;
        CHECK(std::abs(std::stod(row[2]) - (support ? 1.0 / 6.0 : 0.0)) < 1e-6);
    }

    const json j = json::parse(invoke({"walk", "--n", "35", "--alphas", "2", "--marks", "1,5,17", "--format", "json"}).out);
    CHECK(j["converged"] == true);
    for (const auto& e : j["final"]) {
        const int v = e["vertex"];
        const bool support = v % 7 == 0 || v == 15 || v == 25 || v == 30;
        CHECK(std::abs(e["probability"].get<double>() - (support ? 1.0 / 7.0 : 0.0)) < 1e-6);
    }
    CHECK(j["factor"] == json::array({5, 7}));

    const json one = json::parse(invoke({"walk", "--n", "15", "--alphas", "2", "--marks", "all-but-one", "--format", "json"}).out);
    CHECK(one["final"][13]["probability"].get<double>() == doctest::Approx(1.0));
    CHECK(error_code(invoke({"walk", "--n", "15", "--alphas", "2", "--marks", "1,1"})) == "invalid-marks");
    CHECK(error_code(invoke({"walk", "--n", "15", "--alphas", "2", "--marks", "1", "--dt", "2"})) == "invalid-dt");
}

TEST_CASE("aqc amplitudes and summary") {
    const auto dir = std::filesystem::temp_directory_path() / "wormhole_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto summary = (dir / "s.json").string();
    const auto r = invoke({"aqc", "--n", "15", "--alphas", "2,7", "--marks", "2,11", "--time", "10", "--summary", summary});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"s", "vertex", "abs_amplitude", "probability"});
    const json s = json::parse(slurp(summary));
    CHECK(s["final_cosine_vs_classical"].get<double>() >= 0.999);
    CHECK(s["norm_drift_max"].get<double>() <= 1e-6);
    CHECK(s["T"] == 10.0);
    CHECK(s["steps"] == 1800);

    const json quick = json::parse(invoke({"aqc", "--n", "15", "--alphas", "2,7", "--marks", "2,11", "--time", "0.01", "--format", "json"}).out);
    // Uniform over 12 vertices against uniform over 6 of them.
    CHECK(quick["final_cosine_vs_classical"].get<double>() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));

    const auto bad = invoke({"aqc", "--n", "15", "--alphas", "2,7", "--marks", "2,11", "--time", "-1"});
    CHECK(bad.code == 2);
    CHECK(error_code(bad) == "invalid-T");
    std::filesystem::remove_all(dir);
}

TEST_CASE("compare sweeps T") {
    const auto r = invoke({"compare", "--n", "15", "--alphas", "2,7", "--marks", "2,11", "--times", "1,10"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"T", "steps", "cosine", "norm_drift_max"});
    REQUIRE(rows.size() == 3);
    CHECK(std::stod(rows[1][2]) < std::stod(rows[2][2]));
    CHECK(std::stod(rows[2][2]) >= 0.999);
}

TEST_CASE("factor recovers the primes") {
    const json a = json::parse(invoke({"factor", "--n", "15", "--alphas", "2,7", "--seed", "7"}).out);
    CHECK(a["p"] == 3);
    CHECK(a["q"] == 5);
    const json b = json::parse(invoke({"factor", "--n", "35", "--alphas", "2", "--seed", "7"}).out);
    CHECK(b["p"].get<int>() * b["q"].get<int>() == 35);
    CHECK(b["attempts"].get<int>() <= 20);

    const auto miss = invoke({"factor", "--n", "15", "--alphas", "2", "--k", "13", "--attempts", "1", "--seed", "1"});
    CHECK(miss.code == 4);
    CHECK(error_code(miss) == "factor-not-found");
    const auto bad = invoke({"factor", "--n", "13"});
    CHECK(bad.code == 2);
    CHECK(error_code(bad) == "invalid-N");
}

TEST_CASE("spectrum") {
    const json j = json::parse(invoke({"spectrum", "--n", "35", "--alphas", "2", "--marks", "1,5,17"}).out);
    CHECK(j["dimension"] == 31);
    CHECK(j["gap"].get<double>() < 1e-12);
    CHECK(j["minimal_multiplicity"] == 2);
}

TEST_CASE("identical invocations give identical bytes") {
    const std::vector<std::vector<std::string>> commands{
        {"mark-prob", "--n", "35", "--alphas", "2,3", "--trials", "300", "--seed", "9"},
        {"mark-prob", "--n", "35", "--alphas", "2", "--trials", "100", "--mode", "weak", "--k-min", "3", "--k-max", "8"},
        {"factor", "--n", "35", "--alphas", "2", "--seed", "3"},
        {"aqc", "--n", "15", "--alphas", "2", "--marks", "1,7", "--time", "2", "--format", "json"},
        {"walk", "--n", "15", "--alphas", "2", "--k", "3", "--seed", "4", "--cadence", "5"}};
    for (const auto& c : commands) {
        const auto first = invoke(c);
        const auto second = invoke(c);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
        CHECK_FALSE(first.out.empty());
    }
}

TEST_CASE("relative output paths resolve under the output directory") {
    const auto dir = std::filesystem::temp_directory_path() / "wormhole_out_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    ::setenv("WORMHOLE_OUTPUT_DIR", dir.c_str(), 1);
    const auto r = invoke({"aqc", "--n", "15", "--alphas", "2,7", "--marks", "2,11", "--time", "1", "--output", "trace.csv"});
    ::unsetenv("WORMHOLE_OUTPUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "trace.csv"));
    CHECK(std::filesystem::exists(dir / "trace.csv.summary.json"));
    CHECK(csv_rows(slurp(dir / "trace.csv"))[0][0] == "s");
    std::filesystem::remove_all(dir);
}
