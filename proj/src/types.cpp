#include "album/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace album {

std::string to_string(Mode mode) {
    return mode == Mode::Harmonic ? "harmonic" : "log";
}

std::string to_string(SwapStrategy strategy) {
    switch (strategy) {
        case SwapStrategy::None: return "none";
        case SwapStrategy::RandomTiming: return "random";
        case SwapStrategy::BestCase: return "best";
        case SwapStrategy::WorstCase: return "worst";
        case SwapStrategy::DuplicateConstrained: return "duplicate-constrained";
    }
    return "?";
}

Mode mode_from_string(const std::string& name) {
    if (name == "harmonic") return Mode::Harmonic;
    if (name == "log") return Mode::Log;
    throw std::invalid_argument("unknown mode '" + name + "' (expected harmonic|log)");
}

SwapStrategy strategy_from_string(const std::string& name) {
    if (name == "none") return SwapStrategy::None;
    if (name == "random") return SwapStrategy::RandomTiming;
    if (name == "best") return SwapStrategy::BestCase;
    if (name == "worst") return SwapStrategy::WorstCase;
    if (name == "duplicate-constrained") return SwapStrategy::DuplicateConstrained;
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected none|random|best|worst|duplicate-constrained)");
}

void AlbumParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (album_size < 1) fail("B: album size must be >= 1");
    if (pack_size < 1) fail("P: pack size must be >= 1");
    if (replacement_limit < 0 || replacement_limit > album_size)
        fail("K: replacement limit must satisfy 0 <= K <= B");
    if (display_size < 0) fail("D: display size must be >= 0");
    if (display_new < 0 || display_new > std::min(display_size, album_size))
        fail("d: new display stickers must satisfy 0 <= d <= min(D, B)");
    if (display_new + replacement_limit > album_size) fail("d + K must not exceed B");
    if (pack_price < 0) fail("p: pack price must be >= 0");
    if (replacement_price < 0) fail("b: replacement price must be >= 0");
    if (display_price < 0) fail("C: display price must be >= 0");
    if (non_collectors < 0) fail("N: non-collector count must be >= 0");
}

void SwapSpec::validate(const AlbumParams& params) const {
    if (quota < 0) throw std::invalid_argument("T: swap quota must be >= 0");
    if (quota > params.collectible_slots())
        throw std::invalid_argument("T: swap quota must not exceed B - d - K = " +
                                    std::to_string(params.collectible_slots()));
    if (strategy == SwapStrategy::None && quota != 0)
        throw std::invalid_argument("strategy none requires T = 0");
}

double SwapSpec::rate(const AlbumParams& params) const {
    const int slots = params.collectible_slots();
    return slots > 0 ? static_cast<double>(quota) / slots : 0.0;
}

double round_money(double euros) {
    return std::round(euros * 100.0) / 100.0;
}

std::string format_money(double euros) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", round_money(euros));
    return buf;
}

} // namespace album
