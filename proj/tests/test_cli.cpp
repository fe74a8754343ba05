// Copyright 2026 The kqfi Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "kqfi/cli.hpp"
#include "kqfi/error.hpp"
#include "kqfi/manybody.hpp"

using namespace kqfi;
using namespace kqfi::cli;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::string without_timestamp(const std::string &text) {
    std::string out;
    for (const std::string &line : lines_of(text)) {
        if (line.rfind("# timestamp", 0) != 0) {
            out += line + '\n';
        }
    }
    return out;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig small_interacting() {
    return parse_config("subcommand = interacting\n"
                        "L_values = 6\n"
                        "gamma_values = 1\n"
                        "h_values = 0.2\n"
                        "delta_values = 0,0.5\n"
                        "t_min = 2\n"
                        "t_max = 6\n"
                        "dt = 0.5\n");
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() /
           ("kqfi_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST_CASE("Subcommand and format names round-trip", "[cli]") {
    for (Subcommand s : all_subcommands()) {
        CHECK(parse_subcommand(to_string(s)) == s);
        CHECK_FALSE(parameter_specs(s).empty());
    }
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK_THROWS_AS(parse_subcommand("phase"), InvalidArgument);
    CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}

TEST_CASE("Config parsing", "[cli]") {
    const RunConfig c = parse_config("# comment\n"
                                     "subcommand = site-scan\n"
                                     "\n"
                                     "  L = 40   # trailing\n"
                                     "seed = 7\n"
                                     "format = json\n"
                                     "output = out.json\n");
    REQUIRE(c.subcommand == Subcommand::SiteScan);
    CHECK(c.parameters.at("L") == "40");
    CHECK(c.seed == 7);
    CHECK(c.format == OutputFormat::Json);
    CHECK(c.output_path == "out.json");
    CHECK(c.value("L") == "40");
    CHECK(c.value("k_max") == "12");
    CHECK_THROWS_AS(c.value("delta_values"), InvalidArgument);
}

TEST_CASE("Config errors name the line", "[cli]") {
    try {
        (void)parse_config("subcommand = scaling\nL = 100\ngamma = 1\nL = 200\n",
                           "run.cfg");
        FAIL("duplicate key accepted");
    } catch (const InvalidArgument &e) {
        CHECK_THAT(e.what(), ContainsSubstring("run.cfg"));
        CHECK_THAT(e.what(), ContainsSubstring("4"));
        CHECK_THAT(e.what(), ContainsSubstring("2"));
    }
    try {
        (void)parse_config("subcommand = scaling\n\nrealizations = 5\n", "run.cfg");
        FAIL("unknown key accepted");
    } catch (const InvalidArgument &e) {
        CHECK_THAT(e.what(), ContainsSubstring("realizations"));
        CHECK_THAT(e.what(), ContainsSubstring("3"));
    }
    try {
        (void)parse_config("delta_values = 1\n", "x.cfg", Subcommand::Asymmetry);
        FAIL("unknown key accepted");
    } catch (const InvalidArgument &e) {
        CHECK_THAT(e.what(), ContainsSubstring("1"));
    }
    CHECK_THROWS_AS(parse_config("L 100\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("subcommand = scaling\n", "c",
                                 Subcommand::Disorder),
                    InvalidArgument);
    CHECK_THROWS_AS(parse_config("seed = -1\n"), InvalidArgument);
    CHECK_THROWS_AS(load_config("/nonexistent/kqfi.cfg"), InvalidArgument);
}

TEST_CASE("Command-line overrides take precedence", "[cli]") {
    RunConfig c = parse_config("subcommand = disorder\nL = 50\nrealizations = 3\n");
    apply_overrides(c, {{"L", "60"}, {"seed", "9"}, {"L", "70"}});
    CHECK(c.value("L") == "70");
    CHECK(c.value("realizations") == "3");
    CHECK(c.seed == 9);
    apply_overrides(c, {{"bogus", "1"}});
    CHECK_THROWS_AS(c.validate(), InvalidArgument);

    RunConfig empty = parse_config("", "empty", Subcommand::Velocity);
    empty.subcommand = Subcommand::Velocity;
    apply_overrides(empty, {{"L", "30"}});
    CHECK(empty.value("L") == "30");
    CHECK(empty.value("threshold") == "0.02");
}

TEST_CASE("Serialisation is the inverse of parsing", "[cli][property]") {
    std::mt19937_64 rng(3);
    for (Subcommand s : all_subcommands()) {
        RunConfig c;
        c.subcommand = s;
        c.seed = rng();
        c.format = rng() % 2 == 0 ? OutputFormat::Csv : OutputFormat::Json;
        c.output_path = rng() % 2 == 0 ? "" : "result file.csv";
        for (const ParamSpec &p : parameter_specs(s)) {
            if (rng() % 2 == 0) {
                c.parameters[p.key] = p.default_value;
            }
        }
        const RunConfig back = parse_config(serialize_config(c));
        CHECK(back == c);
        CHECK(serialize_config(back) == serialize_config(c));
    }
}

TEST_CASE("Number formatting", "[cli]") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        CHECK(std::stod(format_number(x)) == x);
    }
    const char *prev = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = prev ? prev : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        CHECK(format_number(0.5) == "0.5");
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("CSV and JSON writers", "[cli]") {
    Dataset d;
    d.metadata = {{"tool", "kqfi"}, {"param.L", "4"}};
    ScanRecord a;
    a.set("L", std::int64_t{4}).set("mean_qfi", 0.25).set("error", "");
    ScanRecord b;
    b.set("L", std::int64_t{5})
        .set("mean_qfi", std::numeric_limits<double>::quiet_NaN())
        .set("error", "bad, \"quoted\"");
    d.records = {a, b};

    std::ostringstream csv;
    write_csv(csv, d);
    const std::vector<std::string> rows = lines_of(csv.str());
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "# tool = kqfi");
    CHECK(rows[1] == "# param.L = 4");
    CHECK(rows[2] == "L,mean_qfi,error");
    CHECK(split(rows[3]) == std::vector<std::string>{"4", "0.25", ""});
    CHECK(rows[4] == "5,nan,\"bad, \"\"quoted\"\"\"");

    std::ostringstream js;
    write_json(js, d);
    const nlohmann::json j = nlohmann::json::parse(js.str());
    CHECK(j.at("metadata").at("param.L") == "4");
    REQUIRE(j.at("records").size() == 2);
    CHECK(j.at("records")[0].at("L") == 4);
    CHECK(j.at("records")[0].at("mean_qfi") == 0.25);
    CHECK(j.at("records")[1].at("mean_qfi").is_null());
    CHECK(j.at("records")[1].at("error") == "bad, \"quoted\"");

    ScanRecord ragged;
    ragged.set("L", std::int64_t{1});
    d.records.push_back(ragged);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_csv(sink, d), InvalidArgument);
}

TEST_CASE("Interacting dataset reproduces the library scan", "[cli]") {
    std::ostringstream log;
    const RunConfig c = small_interacting();
    const Dataset d = build_dataset(c, log);

    std::vector<manybody::ManyBodyParams> base(2);
    for (int i = 0; i < 2; ++i) {
        base[i].chain.L = 6;
        base[i].chain.gamma = 1.0;
        base[i].chain.h = 0.2;
        base[i].delta = 0.5 * i;
    }
    TimeWindow w = TimeWindow::with_spacing(2.0, 6.0, 0.5);
    const std::vector<int> sizes{6};
    const ScanRecords ref = manybody::interaction_scan(base, w, sizes);
    CHECK(d.records == ref);

    bool has_seed = false;
    for (const auto &[k, v] : d.metadata) {
        has_seed = has_seed || (k == "seed" && v == "0");
    }
    CHECK(has_seed);
}

TEST_CASE("Runs are reproducible and exit codes are stable", "[cli]") {
    RunConfig c = small_interacting();
    const auto p1 = temp_path("a.csv");
    const auto p2 = temp_path("b.csv");
    std::ostringstream log;
    c.output_path = p1.string();
    CHECK(run(c, log) == 0);
    c.output_path = p2.string();
    CHECK(run(c, log) == 0);
    const std::string first = slurp(p1);
    CHECK_FALSE(first.empty());
    CHECK(without_timestamp(first) == without_timestamp(slurp(p2)));

    c.format = OutputFormat::Json;
    c.output_path = p1.string();
    CHECK(run(c, log) == 0);
    CHECK(nlohmann::json::parse(slurp(p1)).at("records").size() == 2);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);

    RunConfig bad = parse_config("subcommand = asymmetry\ngamma = -1\nL = 20\n");
    bad.output_path = temp_path("bad.csv").string();
    CHECK(run(bad, log) == 2);
    RunConfig none;
    CHECK(run(none, log) == 2);

    RunConfig verify = parse_config("subcommand = verify\noracle_draws = 4\n"
                                    "invariant_draws = 5\n");
    verify.output_path = temp_path("verify.csv").string();
    CHECK(run(verify, log) == 0);
    std::filesystem::remove(verify.output_path);
}
