#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "album/types.hpp"

// Seeded Monte Carlo engine for the physical collection process: display
// seeding, pack draws, swapping under four strategies, replacement cutoff.

namespace album {

/// Raised when a trial exceeds the safety cap on draws.
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mutable state of one collection run.
struct CollectionState {
    std::vector<char> owned;      // membership over sticker ids 0..B-1
    std::vector<int> missing_ids; // ids not yet owned, for O(1) swap picks
    std::vector<int> position;    // index of each id in missing_ids
    long duplicates = 0;          // swap currency currently held
    std::uint64_t stickers_drawn = 0;
    int swaps_done = 0;
    int swaps_pending = 0; // deferred opportunities (DuplicateConstrained)
};

struct TrialOutcome {
    std::uint64_t stickers_drawn = 0; // pack total, always a multiple of P
    std::uint64_t draws_to_stop = 0;  // draws consumed when missing first hit K
    std::uint64_t packs = 0;
    int swaps_done = 0;
};

/// One collection run: seed the album with d distinct stickers, credit D-d
/// duplicates, buy packs of P i.i.d. uniform stickers until at most K
/// stickers are missing, executing swaps per the strategy. The final K slots
/// are replacement-purchased.
TrialOutcome simulate_trial(const AlbumParams& params, const SwapSpec& swap,
                            std::mt19937_64& rng);

/// Actual money spent for one trial: packs at p, display at C, replacement
/// stickers at b for the collector and each of the N non-collectors.
double simulation_cost(const AlbumParams& params, std::uint64_t stickers_drawn);

struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::uint64_t stickers_drawn = 0;
    std::uint64_t packs = 0;
    int swaps_done = 0;
    long cost_cents = 0;
};

struct SimReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string generator; // RNG family and substream derivation

    double mean_stickers = 0.0;  // pack draws, incl. end-of-pack overshoot
    double sigma_stickers = 0.0;
    double mean_draws_to_stop = 0.0; // pack draws up to the replacement cutoff
    double sigma_draws_to_stop = 0.0;
    double mean_swaps = 0.0;
    double mean_cost = 0.0;
    double sigma_cost = 0.0;
    double cost_q025 = 0.0, cost_q50 = 0.0, cost_q975 = 0.0;
    double stderr_mean_stickers = 0.0; // sigma_draws_to_stop / sqrt(trials)
    double stderr_mean_cost = 0.0;
};

/// Derivation of per-trial substreams from (seed, trial_index); every trial
/// gets an independent generator so results do not depend on scheduling.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t trial_index);

/// Run `trials` independent trials. Identical (seed, trials, params, swap)
/// produce a bit-identical report. Per-trial records go to `dump` if given.
SimReport run_simulation(const AlbumParams& params, const SwapSpec& swap,
                         std::uint64_t seed, std::uint64_t trials,
                         std::vector<TrialRecord>* dump = nullptr);

/// CSV dump of per-trial records, columns
/// trial_index,stickers_drawn,packs,swaps_done,cost_cents.
std::string render_trial_csv(const std::vector<TrialRecord>& records);

/// Simulation vs. closed-form comparison. Mean and variance are checked at
/// sticker granularity (draws to the replacement cutoff) against the exact
/// harmonic formulas; cost is checked at a relative tolerance since pack
/// granularity adds up to P-1 stickers of overshoot. For the
/// duplicate-constrained strategy no closed form exists, so only the cost
/// comparison gates the result there.
struct ValidationReport {
    SimReport sim;
    double analytic_mean_stickers = 0.0; // B * f, harmonic mode
    double analytic_sigma_stickers = 0.0;
    double analytic_mean_cost = 0.0; // Eq-6 style cost, clamped at min_price
    double z_mean = 0.0;
    double z_variance = 0.0;
    double cost_rel_diff = 0.0;
    bool mean_checked = false;
    bool sigma_checked = false;
    bool mean_ok = false;
    bool sigma_ok = false;
    bool cost_ok = false;
    bool pass = false;
};

ValidationReport validate_against_analytics(const AlbumParams& params, const SwapSpec& swap,
                                            std::uint64_t seed, std::uint64_t trials,
                                            double tolerance_sigmas,
                                            double cost_tolerance = 0.05);

} // namespace album
