#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fusionwalk/families.hpp"
#include "fusionwalk/io.hpp"

using namespace fusionwalk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fusionwalk_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p;
    }
};

int run(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
    std::ostringstream out, err;
    const int code = io::run_cli(args, out, err);
    if (stdout_text) *stdout_text = out.str();
    return code;
}

}  // namespace

TEST_CASE("ring round trip is byte-stable and coefficient-exact") {
    TempDir tmp;
    for (const auto& [name, ring] : builtin_finite_rings()) {
        CAPTURE(name);
        const std::string emitted = io::emit_ring(ring);
        const fs::path file = tmp.write("ring.json", emitted);
        const FusionRing parsed = io::parse_ring(file);
        CHECK(io::emit_ring(parsed) == emitted);
        REQUIRE(parsed.size() == ring.size());
        for (Index r = 0; r < ring.size(); ++r)
            for (Index s = 0; s < ring.size(); ++s)
                for (Index t = 0; t < ring.size(); ++t)
                    CHECK(parsed.coeff(r, s, t) == ring.coeff(r, s, t));
    }
}

TEST_CASE("measure emission round trip") {
    TempDir tmp;
    const FusionRing v3 = build(FamilySpec::verlinde(3));
    const Measure mu = Measure::from_weights({{0, 0.25}, {1, 0.5}, {3, 0.25}});
    const fs::path file = tmp.write("mu.json", io::emit_measure(mu, v3));
    const Measure parsed = io::parse_measure(file, v3);
    CHECK(parsed.weights() == mu.weights());
}

TEST_CASE("product family builds from nested spec files") {
    TempDir tmp;
    const fs::path left = tmp.write("left.json", R"({"family": "group_table", "group": "cyclic", "order": 2})");
    const fs::path right = tmp.write("right.json", R"({"family": "verlinde_su2", "k": 2})");
    std::string text;
    REQUIRE(run({"ring", "info", "--family", "product", "--params",
                 "left=@" + left.string() + ",right=@" + right.string()},
                &text) == 0);
    const auto report = nlohmann::json::parse(text);
    CHECK(report.at("results").at("size").get<int>() == 6);
    CHECK(report.at("results").at("family") == "product");
}

TEST_CASE("truncated ring round trip keeps the interior") {
    TempDir tmp;
    const FusionRing su2 = build(FamilySpec::su2(8));
    const fs::path file = tmp.write("su2.json", io::emit_ring(su2));
    const FusionRing parsed = io::parse_ring(file);
    CHECK(parsed.truncated());
    CHECK(parsed.interior(4));
    CHECK_FALSE(parsed.interior(5));
    // interior pairs are complete after the round trip, boundary pairs are not
    CHECK(parsed.product_complete(3, 4));
    CHECK_FALSE(parsed.product_complete(7, 8));
}

TEST_CASE("parse failures carry the violated invariant") {
    TempDir tmp;
    SUBCASE("measure that does not sum to one") {
        const FusionRing v2 = build(FamilySpec::verlinde(2));
        const fs::path mfile = tmp.write("m.json", R"({"weights": {"0": 0.4, "1": 0.5}})");
        CHECK_THROWS_WITH_AS(io::parse_measure(mfile, v2),
                             doctest::Contains("sum"), ValidationError);
    }
    SUBCASE("inclusion breaking unital consistency") {
        const fs::path ifile =
            tmp.write("inc.json", R"({"n": [1, 1], "m": [3], "A": [[1], [1]]})");
        CHECK_THROWS_WITH_AS(io::parse_inclusion(ifile),
                             doctest::Contains("unital"), ValidationError);
    }
    SUBCASE("ring violating the axioms") {
        const fs::path rfile = tmp.write("bad.json", R"({
            "basis": ["e", "x"], "unit": "e", "dual": {"e": "e", "x": "x"},
            "coeffs": [
                {"r": "e", "s": "e", "t": "e", "m": 1},
                {"r": "e", "s": "x", "t": "x", "m": 1},
                {"r": "x", "s": "e", "t": "x", "m": 1},
                {"r": "x", "s": "x", "t": "x", "m": 1}
            ]})");
        CHECK_THROWS_AS(io::parse_ring(rfile), ValidationError);
    }
    SUBCASE("malformed JSON") {
        const fs::path rfile = tmp.write("broken.json", "{ not json");
        CHECK_THROWS_AS(io::parse_ring(rfile), ParseError);
    }
}

TEST_CASE("cli dispatch covers the documented commands") {
    TempDir tmp;
    const fs::path ring_file = tmp.path / "v4.json";
    REQUIRE(run({"ring", "build", "--family", "verlinde_su2", "--params", "k=4", "--out",
                 ring_file.string()}) == 0);

    const fs::path fund = tmp.write("fund.json", R"({"weights": {"1": 1.0}})");

    SUBCASE("walk harmonic reports the boundary dimension") {
        std::string text;
        REQUIRE(run({"walk", "harmonic", "--ring", ring_file.string(), "--dims", "fp",
                     "--measure", fund.string()},
                    &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("dimension").get<int>() == 1);
        CHECK(report.at("version").get<std::string>() == io::kVersion);
    }
    SUBCASE("walk kernel emits rows and a csv") {
        const fs::path csv = tmp.path / "kernel.csv";
        std::string text;
        REQUIRE(run({"walk", "kernel", "--ring", ring_file.string(), "--measure", fund.string(),
                     "--csv", csv.string()},
                    &text) == 0);
        CHECK(fs::exists(csv));
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("kernel").size() == 5);
    }
    SUBCASE("reports are deterministic") {
        std::string first, second;
        REQUIRE(run({"walk", "kernel", "--ring", ring_file.string(), "--measure", fund.string()},
                    &first) == 0);
        REQUIRE(run({"walk", "kernel", "--ring", ring_file.string(), "--measure", fund.string()},
                    &second) == 0);
        CHECK(first == second);
    }
    SUBCASE("walk sample honors the seed") {
        std::string first, second;
        REQUIRE(run({"walk", "sample", "--ring", ring_file.string(), "--measure", fund.string(),
                     "--length", "12", "--seed", "42"},
                    &first) == 0);
        REQUIRE(run({"walk", "sample", "--ring", ring_file.string(), "--measure", fund.string(),
                     "--length", "12", "--seed", "42"},
                    &second) == 0);
        CHECK(first == second);
    }
    SUBCASE("walk convolve takes two measures") {
        std::string text;
        REQUIRE(run({"walk", "convolve", "--ring", ring_file.string(), "--measure", fund.string(),
                     "--measure", fund.string()},
                    &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("convolution").contains("0"));
        CHECK(report.at("results").at("convolution").contains("2"));
    }
    SUBCASE("diagnose summarizes the measure") {
        std::string text;
        REQUIRE(run({"walk", "diagnose", "--zero-two", "--ring", ring_file.string(), "--measure",
                     fund.string(), "--steps", "6"},
                    &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("zero_two").size() == 6);
        CHECK(report.at("results").at("generating") == "yes");
        CHECK(report.at("results").at("symmetric") == true);
    }
}

TEST_CASE("cli exit codes") {
    TempDir tmp;
    SUBCASE("validation failure is 2") {
        const fs::path bad = tmp.write("bad_measure.json", R"({"weights": {"0": 0.9}})");
        const fs::path ring_file = tmp.path / "v2.json";
        REQUIRE(run({"ring", "build", "--family", "verlinde_su2", "--params", "k=2", "--out",
                     ring_file.string()}) == 0);
        CHECK(run({"walk", "kernel", "--ring", ring_file.string(), "--measure", bad.string()}) == 2);
    }
    SUBCASE("truncation overflow is 3") {
        const fs::path top = tmp.write("top.json", R"({"weights": {"6": 1.0}})");
        CHECK(run({"walk", "convolve", "--family", "su2_rep", "--params", "cutoff=6", "--dims",
                   "classical", "--measure", top.string(), "--measure", top.string()}) == 3);
    }
    SUBCASE("harmonic on a leaking window is a validation failure") {
        const fs::path fund = tmp.write("fund2.json", R"({"weights": {"1": 1.0}})");
        CHECK(run({"walk", "harmonic", "--family", "su2_rep", "--params", "cutoff=6", "--dims",
                   "classical", "--measure", fund.string()}) == 2);
    }
    SUBCASE("ring validate flags a broken table with exit 2") {
        const fs::path rfile = tmp.write("bad_ring.json", R"({
            "basis": ["e", "x"], "unit": "e", "dual": {"e": "e", "x": "x"},
            "coeffs": [
                {"r": "e", "s": "e", "t": "e", "m": 1},
                {"r": "e", "s": "x", "t": "x", "m": 1},
                {"r": "x", "s": "e", "t": "x", "m": 1},
                {"r": "x", "s": "x", "t": "x", "m": 1}
            ]})");
        std::string text;
        CHECK(run({"ring", "validate", "--ring", rfile.string()}, &text) == 2);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("ok") == false);
        CHECK(report.at("results").at("violations").size() > 0);
    }
}

TEST_CASE("cli entropy commands") {
    TempDir tmp;
    const fs::path diag2 = tmp.write("diag2.json", R"({
        "n": [1, 1], "m": [2], "A": [[1], [1]],
        "state": {"densities": [[[0.5, 0.0], [0.0, 0.5]]]}
    })");

    SUBCASE("maximize reaches log 2") {
        std::string text;
        REQUIRE(run({"entropy", "maximize", "--inclusion", diag2.string()}, &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("value").get<double>() ==
              doctest::Approx(std::log(2.0)).epsilon(1e-9));
    }
    SUBCASE("bound and gap agree with the hand case") {
        std::string text;
        REQUIRE(run({"entropy", "bound", "--inclusion", diag2.string()}, &text) == 0);
        auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("h_bound").get<double>() ==
              doctest::Approx(std::log(2.0)).epsilon(1e-12));

        REQUIRE(run({"entropy", "gap", "--inclusion", diag2.string()}, &text) == 0);
        report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("gap").get<double>() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(report.at("results").at("ok") == true);
    }
    SUBCASE("check compares f against the norm bound") {
        std::string text;
        REQUIRE(run({"entropy", "check", "--inclusion", diag2.string()}, &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("ok") == true);
    }
    SUBCASE("defect accepts explicit parts") {
        const fs::path with_parts = tmp.write("parts.json", R"({
            "n": [1, 1], "m": [2], "A": [[1], [1]],
            "state": {"densities": [[[0.5, 0.0], [0.0, 0.5]]]},
            "parts": [
                {"densities": [[[0.25, 0.25], [0.25, 0.25]]]},
                {"densities": [[[0.25, -0.25], [-0.25, 0.25]]]}
            ]
        })");
        std::string text;
        REQUIRE(run({"entropy", "defect", "--inclusion", with_parts.string()}, &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report.at("results").at("defect").get<double>() ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("cli amen check produces a certificate report") {
    std::string text;
    REQUIRE(run({"amen", "check", "--family", "verlinde_su2", "--params", "k=3", "--dims", "fp",
                 "--object", "1"},
                &text) == 0);
    const auto report = nlohmann::json::parse(text);
    CHECK(report.at("results").at("kind") == "AmenableEvidence");
    CHECK(report.at("results").at("certificate").at("lower_bound").get<double>() ==
          doctest::Approx(2.0 * std::cos(M_PI / 5.0)).epsilon(1e-8));
    CHECK(report.at("warnings").empty());
}

TEST_CASE("cli amen benchmark reports the contrast gap") {
    std::string text;
    REQUIRE(run({"amen", "benchmark", "--rank", "2", "--radius", "12"}, &text) == 0);
    const auto report = nlohmann::json::parse(text);
    const double bound = report.at("results").at("certificate").at("lower_bound").get<double>();
    CHECK(bound >= 3.45);
    CHECK(bound <= 3.4642);
    CHECK(report.at("results").at("gap").get<double>() ==
          doctest::Approx(4.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-3));
}

TEST_CASE("cli ring info summarizes a family build") {
    std::string text;
    REQUIRE(run({"ring", "info", "--family", "su2_rep", "--params", "cutoff=12"}, &text) == 0);
    const auto report = nlohmann::json::parse(text);
    CHECK(report.at("results").at("size").get<int>() == 13);
    CHECK(report.at("results").at("truncated").get<bool>());
    CHECK(report.at("results").at("interior_size").get<int>() == 7);
}
