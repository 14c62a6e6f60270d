#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "album/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << content;
}

struct CliOverrides {
    std::string config_path, preset, mode, format, strategy;
    // scenario overrides; only applied when the flag was passed
    int B = 0, P = 0, K = -1, D = -1, d = -1, N = -1, T = -1, F = 0;
    double p = -1, b = -1, C = -1;
    long trials = -1;
    bool seed_set = false;
    std::uint64_t seed = 0;
};

album::ScenarioConfig build_config(const CliOverrides& o, const CLI::App& cmd) {
    album::ScenarioConfig config = album::preset_em2016();
    if (!o.preset.empty() && o.preset != "em2016")
        throw std::runtime_error("unknown preset '" + o.preset + "' (available: em2016)");
    if (!o.config_path.empty()) config = album::parse_config(read_file(o.config_path));

    auto passed = [&](const std::string& flag) { return cmd.count(flag) > 0; };
    if (passed("--B")) config.params.album_size = o.B;
    if (passed("--P")) config.params.pack_size = o.P;
    if (passed("--K")) config.params.replacement_limit = o.K;
    if (passed("--D")) config.params.display_size = o.D;
    if (passed("--d")) config.params.display_new = o.d;
    if (passed("--N")) config.params.non_collectors = o.N;
    if (passed("--p")) config.params.pack_price = o.p;
    if (passed("--b")) config.params.replacement_price = o.b;
    if (passed("--C")) config.params.display_price = o.C;
    if (passed("--T")) config.swap_quota = o.T;
    if (passed("--F")) config.collectors = o.F;
    if (!o.strategy.empty()) config.strategy = album::strategy_from_string(o.strategy);
    if (!o.mode.empty()) config.mode = album::mode_from_string(o.mode);
    if (!o.format.empty()) config.format = album::format_from_string(o.format);
    if (o.trials >= 0) config.trials = o.trials;
    if (o.seed_set) config.seed = o.seed;
    config.validate();
    return config;
}

void add_common_options(CLI::App* cmd, CliOverrides& o, std::string& out_path) {
    cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    cmd->add_option("--config", o.config_path, "scenario config file (key = value)");
    cmd->add_option("--preset", o.preset, "named parameter preset (em2016)");
    cmd->add_option("--seed", o.seed, "RNG seed")->each([&](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--mode", o.mode, "harmonic|log");
    cmd->add_option("--format", o.format, "csv|json|text");
    cmd->add_option("--B", o.B, "album size");
    cmd->add_option("--P", o.P, "stickers per pack");
    cmd->add_option("--K", o.K, "replacement sticker limit");
    cmd->add_option("--D", o.D, "stickers per display");
    cmd->add_option("--d", o.d, "distinct new stickers in the display");
    cmd->add_option("--N", o.N, "non-collectors ordering replacements");
    cmd->add_option("--p", o.p, "pack price (euros)");
    cmd->add_option("--b", o.b, "replacement sticker price (euros)");
    cmd->add_option("--C", o.C, "display price (euros)");
    cmd->add_option("--T", o.T, "swap quota");
    cmd->add_option("--F", o.F, "collectors in the community baseline");
    cmd->add_option("--strategy", o.strategy,
                    "none|random|best|worst|duplicate-constrained");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sticker album completion economics: closed forms and Monte Carlo"};
    app.require_subcommand(1);

    CliOverrides o;
    std::string out_path;
    std::string dump_path;
    std::vector<int> d_values;

    CLI::App* factor = app.add_subcommand("factor", "factor f, mean stickers, sigma, bounds");
    CLI::App* cost = app.add_subcommand("cost", "cost estimate with bounds and clamp");
    CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep over the swap quota T");
    CLI::App* table1 = app.add_subcommand("table1", "factor asymptotics grid");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run + analytic comparison");
    CLI::App* stange = app.add_subcommand("stange", "wholesale bundle economics");
    CLI::App* sensitivity = app.add_subcommand("sensitivity-d", "factor/cost across d values");
    for (CLI::App* cmd : {factor, cost, sweep, table1, simulate, stange, sensitivity})
        add_common_options(cmd, o, out_path);
    simulate->add_option("--dump", dump_path, "write per-trial CSV records to this file");
    sensitivity->add_option("--d-values", d_values, "d values to evaluate")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        std::string output;
        if (*factor) {
            output = album::cmd_factor(build_config(o, *factor));
        } else if (*cost) {
            output = album::cmd_cost(build_config(o, *cost));
        } else if (*sweep) {
            output = album::cmd_sweep(build_config(o, *sweep));
        } else if (*table1) {
            output = album::cmd_table1(build_config(o, *table1));
        } else if (*simulate) {
            std::vector<album::TrialRecord> records;
            output = album::cmd_simulate(build_config(o, *simulate),
                                         dump_path.empty() ? nullptr : &records);
            if (!dump_path.empty()) write_output(dump_path, album::render_trial_csv(records));
        } else if (*stange) {
            output = album::cmd_stange(build_config(o, *stange));
        } else if (*sensitivity) {
            if (d_values.empty())
                throw std::runtime_error("sensitivity-d requires --d-values (e.g. 420,450,480)");
            output = album::cmd_sensitivity_d(build_config(o, *sensitivity), d_values);
        }
        write_output(out_path, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
