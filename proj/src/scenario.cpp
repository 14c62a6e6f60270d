#include "album/scenario.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace album {

std::string to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "?";
}

OutputFormat format_from_string(const std::string& name) {
    if (name == "text") return OutputFormat::Text;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv|json|text)");
}

void ScenarioConfig::validate() const {
    params.validate();
    SwapSpec{swap_quota, strategy}.validate(params);
    if (sweep) {
        if (sweep->step < 1) throw std::invalid_argument("T_step: must be >= 1");
        if (sweep->start < 0 || sweep->start > sweep->end)
            throw std::invalid_argument("T_start: need 0 <= T_start <= T_end");
        if (sweep->end > params.collectible_slots())
            throw std::invalid_argument("T_end: must not exceed B - d - K = " +
                                        std::to_string(params.collectible_slots()));
    }
    if (trials < 0) throw std::invalid_argument("trials: must be >= 0");
    if (stange_displays < 1) throw std::invalid_argument("displays: must be >= 1");
    if (fill_efficiency <= 0.0 || fill_efficiency > 1.0)
        throw std::invalid_argument("fill_efficiency: must be in (0, 1]");
    if (collectors < 1) throw std::invalid_argument("F: must be >= 1");
}

ScenarioConfig preset_em2016() {
    ScenarioConfig config;
    config.params.album_size = 680;
    config.params.pack_size = 5;
    config.params.replacement_limit = 50;
    config.params.display_size = 500;
    config.params.display_new = 450;
    config.params.pack_price = 0.70;
    config.params.replacement_price = 0.20;
    config.params.display_price = 50.0;
    config.params.non_collectors = 0;
    return config;
}

ConfigError::ConfigError(int line_no, std::string key_name, const std::string& message)
    : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + message
                                     : message),
      line(line_no),
      key(std::move(key_name)) {}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

long parse_long(const std::string& value, int line, const std::string& key) {
    long result = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(line, key, key + ": not an integer: '" + value + "'");
    return result;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
    std::uint64_t result = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(line, key, key + ": not an unsigned integer: '" + value + "'");
    return result;
}

double parse_double(const std::string& value, int line, const std::string& key) {
    try {
        size_t used = 0;
        const double result = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return result;
    } catch (const std::exception&) {
        throw ConfigError(line, key, key + ": not a number: '" + value + "'");
    }
}

std::string render_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config = preset_em2016();
    std::map<std::string, int> seen; // key -> first line
    std::optional<int> t_start, t_end, t_step;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "", "expected 'key = value', got '" + trim(raw) + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
        if (auto [it, inserted] = seen.emplace(key, line_no); !inserted)
            throw ConfigError(line_no, key,
                              "duplicate key '" + key + "' (first on line " +
                                  std::to_string(it->second) + ")");

        try {
            if (key == "B") config.params.album_size = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "P") config.params.pack_size = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "K") config.params.replacement_limit = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "D") config.params.display_size = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "d") config.params.display_new = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "p") config.params.pack_price = parse_double(value, line_no, key);
            else if (key == "b") config.params.replacement_price = parse_double(value, line_no, key);
            else if (key == "C") config.params.display_price = parse_double(value, line_no, key);
            else if (key == "N") config.params.non_collectors = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "strategy") config.strategy = strategy_from_string(value);
            else if (key == "T") config.swap_quota = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "T_start") t_start = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "T_end") t_end = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "T_step") t_step = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "trials") config.trials = parse_long(value, line_no, key);
            else if (key == "seed") config.seed = parse_u64(value, line_no, key);
            else if (key == "mode") config.mode = mode_from_string(value);
            else if (key == "format") config.format = format_from_string(value);
            else if (key == "displays") config.stange_displays = static_cast<int>(parse_long(value, line_no, key));
            else if (key == "fill_efficiency") config.fill_efficiency = parse_double(value, line_no, key);
            else if (key == "F") config.collectors = static_cast<int>(parse_long(value, line_no, key));
            else throw ConfigError(line_no, key, "unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(line_no, key, key + ": " + e.what());
        }
    }

    if (t_start || t_end || t_step) {
        if (!t_start || !t_end)
            throw ConfigError(0, "T_start", "a sweep needs both T_start and T_end");
        config.sweep = SweepRange{*t_start, *t_end, t_step.value_or(1)};
    }

    try {
        config.validate();
    } catch (const std::exception& e) {
        throw ConfigError(0, "", e.what());
    }
    return config;
}

std::string render_config(const ScenarioConfig& config) {
    std::ostringstream out;
    out << "B = " << config.params.album_size << "\n"
        << "P = " << config.params.pack_size << "\n"
        << "K = " << config.params.replacement_limit << "\n"
        << "D = " << config.params.display_size << "\n"
        << "d = " << config.params.display_new << "\n"
        << "p = " << render_double(config.params.pack_price) << "\n"
        << "b = " << render_double(config.params.replacement_price) << "\n"
        << "C = " << render_double(config.params.display_price) << "\n"
        << "N = " << config.params.non_collectors << "\n"
        << "strategy = " << to_string(config.strategy) << "\n"
        << "T = " << config.swap_quota << "\n";
    if (config.sweep) {
        out << "T_start = " << config.sweep->start << "\n"
            << "T_end = " << config.sweep->end << "\n"
            << "T_step = " << config.sweep->step << "\n";
    }
    out << "trials = " << config.trials << "\n"
        << "seed = " << config.seed << "\n"
        << "mode = " << to_string(config.mode) << "\n"
        << "format = " << to_string(config.format) << "\n"
        << "displays = " << config.stange_displays << "\n"
        << "fill_efficiency = " << render_double(config.fill_efficiency) << "\n"
        << "F = " << config.collectors << "\n";
    return out.str();
}

} // namespace album
