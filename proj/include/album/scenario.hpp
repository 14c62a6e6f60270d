#pragma once

#include <optional>
#include <string>

#include "album/types.hpp"

namespace album {

enum class OutputFormat { Text, Csv, Json };

std::string to_string(OutputFormat format);
OutputFormat format_from_string(const std::string& name);

struct SweepRange {
    int start = 0;
    int end = 0;
    int step = 1;
    bool operator==(const SweepRange&) const = default;
};

/// Everything a CLI run needs: album parameters, swap setup, simulation
/// controls and output preferences.
struct ScenarioConfig {
    AlbumParams params;
    SwapStrategy strategy = SwapStrategy::RandomTiming;
    int swap_quota = 0; // T
    std::optional<SweepRange> sweep;
    long trials = 0;
    std::uint64_t seed = 42;
    Mode mode = Mode::Log;
    OutputFormat format = OutputFormat::Text;
    int stange_displays = 12;
    double fill_efficiency = 1.0;
    int collectors = 1; // F, community baseline only

    void validate() const;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Panini EM 2016: B=680, P=5, K=50, D=500, d=450, p=0.70, b=0.20, C=50.
ScenarioConfig preset_em2016();

struct ConfigError : std::runtime_error {
    ConfigError(int line, std::string key, const std::string& message);
    int line;        // 0 when not tied to a line
    std::string key; // offending key, may be empty
};

/// Parse the flat `key = value` format. Unknown or duplicate keys are
/// rejected with the line number; values are validated after parsing.
/// Missing keys keep the EM 2016 defaults.
ScenarioConfig parse_config(const std::string& text);

/// Inverse of parse_config: parse(render(config)) == config.
std::string render_config(const ScenarioConfig& config);

} // namespace album
