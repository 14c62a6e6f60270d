#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "album/analytics.hpp"
#include "album/commands.hpp"
#include "album/scenario.hpp"

using namespace album;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

} // namespace

TEST_CASE("preset carries the expected defaults") {
    const ScenarioConfig c = preset_em2016();
    CHECK(c.params.album_size == 680);
    CHECK(c.params.pack_size == 5);
    CHECK(c.params.replacement_limit == 50);
    CHECK(c.params.display_size == 500);
    CHECK(c.params.display_new == 450);
    CHECK(c.params.pack_price == doctest::Approx(0.70));
    CHECK(c.params.replacement_price == doctest::Approx(0.20));
    CHECK(c.params.display_price == doctest::Approx(50.0));
    CHECK(c.params.non_collectors == 0);
    CHECK(c.mode == Mode::Log);
    CHECK(c.seed == 42);
    CHECK(c.trials == 0);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config round-trip: parse(render(config)) == config") {
    ScenarioConfig c = preset_em2016();
    c.strategy = SwapStrategy::DuplicateConstrained;
    c.swap_quota = 120;
    c.trials = 5000;
    c.seed = 987654321ULL;
    c.mode = Mode::Harmonic;
    c.format = OutputFormat::Csv;
    c.params.pack_price = 0.85;
    c.fill_efficiency = 0.9;
    c.collectors = 10;
    CHECK(parse_config(render_config(c)) == c);

    c.sweep = SweepRange{0, 180, 15};
    CHECK(parse_config(render_config(c)) == c);
}

TEST_CASE("config parsing accepts comments, blanks and spacing") {
    const ScenarioConfig c = parse_config("# scenario\n"
                                          "\n"
                                          "  B = 100   # album size\n"
                                          "P=4\n"
                                          "K = 10\n"
                                          "D = 0\n"
                                          "d = 0\n"
                                          "T = 30\n");
    CHECK(c.params.album_size == 100);
    CHECK(c.params.pack_size == 4);
    CHECK(c.params.replacement_limit == 10);
    CHECK(c.swap_quota == 30);
    // unspecified keys keep preset defaults
    CHECK(c.params.pack_price == doctest::Approx(0.70));
}

TEST_CASE("config parsing rejects malformed input with line and key") {
    // unknown key
    try {
        parse_config("B = 680\nQ = 3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
        CHECK(e.key == "Q");
        CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
    }
    // duplicate key
    try {
        parse_config("B = 680\nB = 700\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
        CHECK(e.key == "B");
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
    // bad number
    try {
        parse_config("p = cheap\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 1);
        CHECK(e.key == "p");
    }
    // missing '='
    CHECK_THROWS_AS(parse_config("B 680\n"), ConfigError);
    // half a sweep
    CHECK_THROWS_AS(parse_config("T_start = 0\n"), ConfigError);
    // semantic validation names the offending key
    CHECK_THROWS_WITH_AS(parse_config("B = 0\n"), doctest::Contains("B:"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("T = 9999\n"), doctest::Contains("T:"), ConfigError);
}

TEST_CASE("cmd_factor text output") {
    ScenarioConfig c = preset_em2016();
    c.swap_quota = 100;
    const std::string text = cmd_factor(c);
    CHECK(text.find("f = 1.4871") != std::string::npos); // (1 - 100/180) ln 4.6 + 550/680
    CHECK(text.find("[refuted]") != std::string::npos);  // wrong claim stays labeled
    CHECK(text.find("baselines") != std::string::npos);

    c.format = OutputFormat::Json;
    const auto j = nlohmann::json::parse(cmd_factor(c));
    CHECK(j["f"].get<double>() == doctest::Approx(1.4871).epsilon(1e-4));
    CHECK(j["baselines"]["h_b_over_p_claim"]["refuted"].get<bool>());
    CHECK(j["baselines"]["classical"]["cost"].get<double>() ==
          doctest::Approx(675.92).epsilon(1e-3));
    CHECK(j["swap"]["t"].get<double>() == doctest::Approx(100.0 / 180).epsilon(1e-9));
}

TEST_CASE("cmd_cost output and clamping") {
    ScenarioConfig c = preset_em2016();
    c.format = OutputFormat::Json;
    auto j = nlohmann::json::parse(cmd_cost(c));
    CHECK(j["mean"].get<double>() == doctest::Approx(205.28).epsilon(1e-3));
    CHECK(j["min_price"].get<double>() == doctest::Approx(78.20).epsilon(1e-9));
    CHECK_FALSE(j["clamped"].get<bool>());

    c.swap_quota = 180;
    c.strategy = SwapStrategy::RandomTiming;
    j = nlohmann::json::parse(cmd_cost(c));
    CHECK(j["mean"].get<double>() == doctest::Approx(78.20).epsilon(1e-9));
    CHECK(j["clamped"].get<bool>());

    c.format = OutputFormat::Csv;
    const auto lines = split(cmd_cost(c), '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] ==
          "cost_mean,cost_sigma,cost_lower,cost_upper,band_lo,band_hi,min_price,clamped");
    const auto cells = split(lines[1], ',');
    REQUIRE(cells.size() == 8);
    CHECK(cells[0] == "78.20");
    CHECK(cells[7] == "1");
}

TEST_CASE("cmd_sweep CSV schema and pinned rows") {
    ScenarioConfig c = preset_em2016(); // default range 0..180 step 10
    const auto lines = split(cmd_sweep(c), '\n');
    REQUIRE(lines.size() >= 20); // header + 19 rows
    CHECK(lines[0] ==
          "T,t,f_mean,cost_mean,cost_lower,cost_upper,cost_mean_minus_2sigma,"
          "cost_mean_plus_2sigma,min_price,cost_sim,clamped");

    int prev_T = -10;
    for (size_t i = 1; i < lines.size() && !lines[i].empty(); ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 11);
        const int T = std::stoi(cells[0]);
        CHECK(T == prev_T + 10); // ascending, fixed step
        prev_T = T;
        const double mean = std::stod(cells[3]);
        const double lower = std::stod(cells[4]);
        const double upper = std::stod(cells[5]);
        const double floor = std::stod(cells[8]);
        CHECK(lower <= mean + 1e-9);   // sandwich survives the clamp
        CHECK(mean <= upper + 1e-9);
        CHECK(mean >= floor - 1e-9);   // every cost cell at or above the floor
        CHECK(lower >= floor - 1e-9);
        CHECK(cells[9].empty());       // no simulation column without trials
        CHECK(cells[1].find('.') != std::string::npos); // '.' decimal separator
    }
    // pinned first row: no swaps
    const auto first = split(lines[1], ',');
    CHECK(first[0] == "0");
    CHECK(std::stod(first[3]) == doctest::Approx(205.28).epsilon(1e-3));
    CHECK(first[8] == "78.20");
    CHECK(first[10] == "0");
    // pinned last row: full quota, everything clamped to the floor
    const auto last = split(lines[19], ',');
    CHECK(last[0] == "180");
    for (int col : {3, 4, 5, 6, 7, 8}) CHECK(split(lines[19], ',')[col] == "78.20");
    CHECK(last[10] == "1");
}

TEST_CASE("cmd_sweep fills the simulation column when trials are requested") {
    ScenarioConfig c = preset_em2016();
    c.sweep = SweepRange{0, 40, 40};
    c.trials = 200;
    const auto lines = split(cmd_sweep(c), '\n');
    REQUIRE(lines.size() >= 3);
    for (size_t i = 1; i <= 2; ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 11);
        CHECK_FALSE(cells[9].empty());
        const double sim = std::stod(cells[9]);
        const double mean = std::stod(cells[3]);
        CHECK(sim == doctest::Approx(mean).epsilon(0.05));
    }
}

TEST_CASE("cmd_table1 grid") {
    ScenarioConfig c = preset_em2016();
    const std::string text = cmd_table1(c);
    CHECK(text.find("->1") != std::string::npos); // limit cells
    CHECK(text.find("6.5221") != std::string::npos);
    CHECK(text.find("1.8752") != std::string::npos);

    c.format = OutputFormat::Json;
    const auto j = nlohmann::json::parse(cmd_table1(c));
    CHECK(j["single"]["none"].get<double>() == doctest::Approx(6.522).epsilon(1e-3));
    CHECK(j["community_large_f"]["none"].get<double>() ==
          doctest::Approx(1.875).epsilon(1e-3));
    CHECK(j["single"]["replacement_display"].get<double>() ==
          doctest::Approx(2.335).epsilon(1e-3));
    CHECK(j["community_large_f"]["replacement"].get<std::string>() == "->1");
}

TEST_CASE("cmd_simulate reports and validates") {
    ScenarioConfig c = preset_em2016();
    c.strategy = SwapStrategy::DuplicateConstrained;
    c.swap_quota = 100;
    c.trials = 1500;
    c.format = OutputFormat::Json;
    const auto j = nlohmann::json::parse(cmd_simulate(c));
    CHECK(j["trials"].get<int>() == 1500);
    CHECK(j["validation"]["z_mean"].is_null()); // no closed form for this strategy
    const double sim = j["mean_cost"].get<double>();
    const double analytic = j["validation"]["analytic_mean_cost"].get<double>();
    CHECK(sim == doctest::Approx(analytic).epsilon(0.05)); // within 5% at moderate T
    CHECK(j["regime"].get<std::string>() == "tracks analytic mean");

    // single-trial run still produces a complete report
    c.trials = 1;
    c.format = OutputFormat::Text;
    const std::string text = cmd_simulate(c);
    CHECK(text.find("trials=1") != std::string::npos);
    CHECK(text.find("cost: mean =") != std::string::npos);

    c.trials = 0;
    CHECK_THROWS_AS(cmd_simulate(c), std::invalid_argument);
}

TEST_CASE("cmd_simulate flags the divergence regime at large quotas") {
    ScenarioConfig c = preset_em2016();
    c.strategy = SwapStrategy::DuplicateConstrained;
    c.swap_quota = 160;
    c.trials = 1500;
    c.format = OutputFormat::Json;
    const auto j = nlohmann::json::parse(cmd_simulate(c));
    CHECK(j["regime"].get<std::string>() == "diverges toward worst-case bound");
}

TEST_CASE("cmd_simulate dumps per-trial records") {
    ScenarioConfig c = preset_em2016();
    c.trials = 25;
    std::vector<TrialRecord> records;
    cmd_simulate(c, &records);
    REQUIRE(records.size() == 25);
    const std::string csv = render_trial_csv(records);
    CHECK(csv.rfind("trial_index,", 0) == 0);
    CHECK(split(csv, '\n').size() >= 26);
}

TEST_CASE("cmd_stange report") {
    ScenarioConfig c = preset_em2016();
    const std::string text = cmd_stange(c);
    CHECK(text.find("8.82") != std::string::npos);
    CHECK(text.find("= 8 ") != std::string::npos);
    CHECK(text.find("75.00") != std::string::npos);

    c.format = OutputFormat::Json;
    const auto j = nlohmann::json::parse(cmd_stange(c));
    CHECK(j["albums"].get<int>() == 8);
    CHECK(j["cost_per_album"].get<double>() == doctest::Approx(75.0).epsilon(1e-9));
    CHECK(j["stange_price"].get<double>() == doctest::Approx(600.0).epsilon(1e-9));

    c.stange_displays = 1; // fills no album
    CHECK_THROWS_AS(cmd_stange(c), std::domain_error);
}

TEST_CASE("cmd_sensitivity_d spread and monotonicity") {
    ScenarioConfig c = preset_em2016();
    const auto lines = split(cmd_sensitivity_d(c, {420, 450, 480}), '\n');
    REQUIRE(lines.size() >= 5);
    CHECK(lines[0] == "d,t,f_mean,cost_mean,min_price,clamped");
    double prev_cost = 1e18;
    for (int i = 1; i <= 3; ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 6);
        const double cost_mean = std::stod(cells[3]);
        CHECK(cost_mean < prev_cost); // more distinct display stickers, cheaper
        prev_cost = cost_mean;
    }
    // spread across d = 450 +- 30 without swaps: B ln(260/200) p/P
    const std::string spread_line = lines[4];
    CHECK(spread_line.rfind("cost spread = ", 0) == 0);
    CHECK(std::stod(spread_line.substr(14)) ==
          doctest::Approx(680.0 * std::log(260.0 / 200.0) * 0.14).epsilon(1e-3));

    // a single d reproduces cmd_factor's f
    const auto single = split(split(cmd_sensitivity_d(c, {450}), '\n')[1], ',');
    ScenarioConfig f = preset_em2016();
    f.format = OutputFormat::Json;
    const auto jf = nlohmann::json::parse(cmd_factor(f));
    CHECK(std::stod(single[2]) == doctest::Approx(jf["f"].get<double>()).epsilon(1e-6));

    CHECK_THROWS_AS(cmd_sensitivity_d(c, {}), std::invalid_argument);
    CHECK_THROWS_AS(cmd_sensitivity_d(c, {700}), std::invalid_argument);
}

TEST_CASE("string conversions round-trip") {
    for (SwapStrategy s : {SwapStrategy::None, SwapStrategy::RandomTiming,
                           SwapStrategy::BestCase, SwapStrategy::WorstCase,
                           SwapStrategy::DuplicateConstrained})
        CHECK(strategy_from_string(to_string(s)) == s);
    for (Mode m : {Mode::Harmonic, Mode::Log}) CHECK(mode_from_string(to_string(m)) == m);
    for (OutputFormat f : {OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json})
        CHECK(format_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(strategy_from_string("greedy"), std::invalid_argument);
    CHECK_THROWS_AS(mode_from_string("exact"), std::invalid_argument);
    CHECK_THROWS_AS(format_from_string("xml"), std::invalid_argument);
}
