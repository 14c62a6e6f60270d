#pragma once

#include <string>
#include <vector>

#include "album/scenario.hpp"
#include "album/simulator.hpp"

// Report builders behind the CLI subcommands. Each returns the finished
// output (text, CSV or JSON per the config) so the thin CLI wrapper and the
// tests share one code path.

namespace album {

/// Factor, mean sticker count, sigma and swap-timing bounds, plus the
/// classical / refuted / community baselines.
std::string cmd_factor(const ScenarioConfig& config);

/// Cost estimate for the configured scenario (post-clamp).
std::string cmd_cost(const ScenarioConfig& config);

/// One CSV row per swap quota T. Columns:
/// T,t,f_mean,cost_mean,cost_lower,cost_upper,cost_mean_minus_2sigma,
/// cost_mean_plus_2sigma,min_price,cost_sim,clamped
/// cost_sim stays empty unless trials > 0. All cost columns post-clamp.
std::string cmd_sweep(const ScenarioConfig& config);

/// The 3x3 factor-asymptotics grid; limit cells render as "->1".
std::string cmd_table1(const ScenarioConfig& config);

/// Monte Carlo run plus the analytic comparison. Per-trial records are
/// appended to `dump` when given.
std::string cmd_simulate(const ScenarioConfig& config,
                         std::vector<TrialRecord>* dump = nullptr);

/// Wholesale-bundle economics report.
std::string cmd_stange(const ScenarioConfig& config);

/// Re-evaluate factor and cost across candidate d values; CSV columns
/// d,t,f_mean,cost_mean,min_price,clamped (text format appends the spread).
std::string cmd_sensitivity_d(const ScenarioConfig& config, const std::vector<int>& d_values);

} // namespace album
