#pragma once

#include <utility>

#include "album/types.hpp"

// Closed-form results: harmonic numbers, completion factors, cost, bounds,
// baselines and bulk economics. Everything here is a pure function.

namespace album {

/// H(n) = sum_{i=1..n} 1/i, compensated summation. H(0) = 0.
double harmonic(long n);

/// H2(n) = sum_{i=1..n} 1/i^2. H2(0) = 0.
double harmonic2(long n);

/// Mean factor with display seeding and replacement purchasing, no swaps:
/// f = H(B-d) - H(K) + (D+K)/B.
/// Log mode replaces the harmonic difference by ln(B-d) - ln(K), dropping the
/// ln(K) term when K = 0 (classical no-replacement limit).
FactorResult factor_replacement_display(const AlbumParams& params, Mode mode);

/// Best-case / worst-case swap-timing bounds:
///   lower = H(B-d) - H(K+T) + (D+K)/B   (swaps replace the longest waits)
///   upper = H(B-d-T) - H(K) + (D+K)/B
std::pair<FactorResult, FactorResult> factor_bounds(const AlbumParams& params,
                                                    const SwapSpec& swap, Mode mode);

/// Mean factor when T stickers are swapped at uniformly random times:
/// f = (1-t) * (H(B-d) - H(K)) + (D+K)/B with t = T/(B-d-K).
FactorResult factor_swap_mean(const AlbumParams& params, const SwapSpec& swap, Mode mode);

/// Standard deviation of the sticker count, in sticker units.
/// Harmonic mode uses the exact variance
///   V = B^2 (H2(B-d) - H2(K)) - B (H(B-d) - H(K))
/// thinned by (1-t); Log mode uses the closed form
///   sigma = sqrt(B) * sqrt(((B-d)/K - 1 - ln((B-d)/K)) * (1-t)), K >= 1.
double stddev_stickers(const AlbumParams& params, const SwapSpec& swap, Mode mode);

/// Mean total cost in euros:
/// A = B f p/P + (1+N) K (b - p/P) - (D p/P - C).
double cost(const AlbumParams& params, const FactorResult& factor);

/// Fewest packs needed when every remaining sticker not covered by the
/// display's D-d duplicates (as swap currency) is bought new:
/// ceil(max(0, B-d-K-(D-d)) / P).
long min_packs(const AlbumParams& params);

/// Absolute cost floor: display + replacement stickers + min_packs packs.
double min_price(const AlbumParams& params);

/// Assemble mean/sigma/bounds/band for a scenario and apply the floor.
CostEstimate estimate_cost(const AlbumParams& params, const SwapSpec& swap, Mode mode);

/// Raise mean, lower, upper and the lower band edge to min_price.
CostEstimate clamp_cost(CostEstimate estimate);

/// Community swapping baseline, per collector:
/// M = (B ln B + B (F-1) ln ln B) / F. Requires B >= 3.
FactorResult classic_swap_factor(int album_size, int collectors);

/// Large-community limit of the above: f = ln ln B.
FactorResult classic_swap_factor_limit(int album_size);

/// The internet-famous but wrong claim f = H(floor(B/P)). Kept as a labeled
/// baseline for comparison; every report must mark it refuted.
FactorResult refuted_claim_factor(int album_size, int pack_size);

/// Expected duplicates among D i.i.d. uniform draws from B stickers:
/// D - B (1 - (1 - 1/B)^D).
double expected_display_duplicates_random(int album_size, int display_draws);

struct StangeResult {
    double ideal_albums = 0.0;   // displays * D / B, no duplicates
    long albums = 0;             // floor(ideal * fill_efficiency)
    double cost_per_album = 0.0; // euros
};

/// Wholesale-bundle economics: how many albums one stange of displays fills
/// and what each costs.
StangeResult stange_economics(int displays_per_stange, int display_size, int album_size,
                              double display_price, double fill_efficiency);

/// The 3x3 asymptotics grid: collection variant (rows) x purchasing extras
/// (columns). Two community cells are pure limits, rendered as "-> 1".
struct Table1 {
    double single_none = 0.0;       // ln B
    double single_repl = 0.0;       // ln(B/K) + K/B
    double single_repl_disp = 0.0;  // ln((B-d)/K) + (K+D)/B
    double community_none = 0.0;    // ln ln B
    bool community_repl_is_limit_one = true;
    bool community_repl_disp_is_limit_one = true;
    double swap_none = 0.0;         // (1-t) ln B,            t = T/B
    double swap_repl = 0.0;         // (1-t) ln(B/K) + K/B,   t = T/(B-K)
    double swap_repl_disp = 0.0;    // (1-t) ln((B-d)/K) + (D+K)/B, t = T/(B-d-K)
};

Table1 table1_factors(int album_size, int replacement_limit, int display_size,
                      int display_new, int swap_quota);

} // namespace album
