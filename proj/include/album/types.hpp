#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace album {

/// Evaluation mode for the factor formulas: exact harmonic sums or the
/// natural-log approximation.
enum class Mode { Harmonic, Log };

/// When swap opportunities occur during the collection process.
enum class SwapStrategy { None, RandomTiming, BestCase, WorstCase, DuplicateConstrained };

std::string to_string(Mode mode);
std::string to_string(SwapStrategy strategy);
Mode mode_from_string(const std::string& name);
SwapStrategy strategy_from_string(const std::string& name);

/// Economic and combinatorial parameters of one sticker album scenario.
struct AlbumParams {
    int album_size = 0;        // B: distinct stickers in the album
    int pack_size = 1;         // P: stickers per pack
    int replacement_limit = 0; // K: stickers purchasable once at premium price
    int display_size = 0;      // D: stickers in one display box
    int display_new = 0;       // d: distinct new stickers obtained from the display
    double pack_price = 0.0;        // p: euros per pack
    double replacement_price = 0.0; // b: euros per replacement sticker
    double display_price = 0.0;     // C: euros per display box
    int non_collectors = 0;    // N: non-collectors ordering replacements for the collector

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    double per_sticker_pack_price() const { return pack_price / pack_size; }

    // B - d - K: stickers that must come from packs or swaps.
    int collectible_slots() const { return album_size - display_new - replacement_limit; }

    bool operator==(const AlbumParams&) const = default;
};

/// Swap quota plus the timing strategy.
struct SwapSpec {
    int quota = 0; // T: stickers obtainable by swapping
    SwapStrategy strategy = SwapStrategy::None;

    void validate(const AlbumParams& params) const;

    // t = T / (B - d - K); 0 when there is nothing left to collect.
    double rate(const AlbumParams& params) const;

    bool operator==(const SwapSpec&) const = default;
};

/// A stickers-per-album-slot factor together with the implied mean count.
struct FactorResult {
    double factor = 0.0;        // f
    double mean_stickers = 0.0; // M = B * f
    Mode mode = Mode::Harmonic;
};

/// Cost summary in euros. All values post-clamp once clamp_cost has run.
struct CostEstimate {
    double mean = 0.0;
    double sigma = 0.0;
    double lower = 0.0;   // best-case swap timing
    double upper = 0.0;   // worst-case swap timing
    double band_lo = 0.0; // mean - 2 sigma
    double band_hi = 0.0; // mean + 2 sigma
    double min_price = 0.0;
    bool clamped = false;
};

/// Round to cents, half away from zero. Computation keeps full precision;
/// only rendering rounds.
double round_money(double euros);
std::string format_money(double euros);

} // namespace album
