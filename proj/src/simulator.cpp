#include "album/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "album/analytics.hpp"

namespace album {

namespace {

constexpr std::uint64_t kDrawCap = 1'000'000'000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Swap opportunities are pre-scheduled over the B-d-K acquisition events.
// Event j is 1-based; scheduled[j] marks a swap at the start of waiting
// period j (best case = last T periods, worst case = first T).
std::vector<char> schedule_swaps(int events, const SwapSpec& swap, std::mt19937_64& rng) {
    std::vector<char> scheduled(static_cast<size_t>(events) + 1, 0);
    const int T = swap.quota;
    switch (swap.strategy) {
        case SwapStrategy::None:
            break;
        case SwapStrategy::BestCase:
            for (int j = events - T + 1; j <= events; ++j) scheduled[j] = 1;
            break;
        case SwapStrategy::WorstCase:
            for (int j = 1; j <= T; ++j) scheduled[j] = 1;
            break;
        case SwapStrategy::RandomTiming:
        case SwapStrategy::DuplicateConstrained: {
            std::vector<int> idx(events);
            std::iota(idx.begin(), idx.end(), 1);
            for (int i = 0; i < T; ++i) {
                std::uniform_int_distribution<int> pick(i, events - 1);
                std::swap(idx[i], idx[pick(rng)]);
                scheduled[idx[i]] = 1;
            }
            break;
        }
    }
    return scheduled;
}

double sample_sigma(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (xs.size() - 1));
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double h = (sorted.size() - 1) * q;
    const size_t lo = static_cast<size_t>(h);
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

std::vector<TrialOutcome> run_trials(const AlbumParams& params, const SwapSpec& swap,
                                     std::uint64_t seed, std::uint64_t trials) {
    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
        std::mt19937_64 rng(substream_seed(seed, i));
        outcomes.push_back(simulate_trial(params, swap, rng));
    }
    return outcomes;
}

} // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t trial_index) {
    return splitmix64(seed ^ splitmix64(trial_index));
}

TrialOutcome simulate_trial(const AlbumParams& params, const SwapSpec& swap,
                            std::mt19937_64& rng) {
    params.validate();
    swap.validate(params);
    const int B = params.album_size;
    const int P = params.pack_size;
    const int K = params.replacement_limit;
    const int events = params.collectible_slots();

    CollectionState state;
    state.owned.assign(B, 0);
    state.missing_ids.resize(B);
    std::iota(state.missing_ids.begin(), state.missing_ids.end(), 0);
    state.position.resize(B);
    std::iota(state.position.begin(), state.position.end(), 0);
    int missing = B;

    auto acquire = [&](int id) {
        state.owned[id] = 1;
        const int at = state.position[id];
        const int last_id = state.missing_ids[missing - 1];
        std::swap(state.missing_ids[at], state.missing_ids[missing - 1]);
        state.position[last_id] = at;
        state.position[id] = missing - 1;
        --missing;
    };
    auto acquire_random_missing = [&]() {
        std::uniform_int_distribution<int> pick(0, missing - 1);
        acquire(state.missing_ids[pick(rng)]);
    };

    // display: d distinct new stickers, D-d duplicate credits
    for (int i = 0; i < params.display_new; ++i) acquire_random_missing();
    state.duplicates = params.display_size - params.display_new;

    const std::vector<char> scheduled = schedule_swaps(events, swap, rng);
    int acquisitions = 0; // events completed beyond the display seed
    int accounted = 0;    // highest event whose swap opportunity was registered

    // Execute every swap due at the current event boundary. In the
    // duplicate-constrained strategy an opportunity needs a duplicate in
    // hand the moment it arrives; without one it is forfeited and the
    // waiting period proceeds by packs.
    auto flush_swaps = [&]() {
        while (missing > K) {
            const int next = acquisitions + 1;
            if (next > events) break;
            if (swap.strategy == SwapStrategy::None) break;
            if (swap.strategy == SwapStrategy::DuplicateConstrained) {
                if (next <= accounted) break; // this period's chance already spent
                accounted = next;
                if (!scheduled[next]) break;
                if (state.duplicates == 0) {
                    ++state.swaps_pending; // forfeited, kept for diagnostics
                    break;
                }
                --state.duplicates;
            } else {
                if (!scheduled[next]) break;
            }
            ++state.swaps_done;
            acquire_random_missing();
            ++acquisitions;
        }
    };

    TrialOutcome outcome;
    std::uint64_t stop_at = missing <= K ? 0 : UINT64_MAX;
    std::uniform_int_distribution<int> draw(0, B - 1);

    flush_swaps();
    if (missing <= K && stop_at == UINT64_MAX) stop_at = 0;

    while (missing > K) {
        for (int i = 0; i < P; ++i) { // whole pack, even past the cutoff
            if (state.stickers_drawn >= kDrawCap)
                throw SimulationError("draw cap exceeded; parameters make completion implausible");
            ++state.stickers_drawn;
            const int id = draw(rng);
            if (state.owned[id]) {
                ++state.duplicates;
            } else {
                acquire(id);
                ++acquisitions;
            }
            flush_swaps();
            if (missing <= K && stop_at == UINT64_MAX) stop_at = state.stickers_drawn;
        }
        ++outcome.packs;
    }

    outcome.stickers_drawn = state.stickers_drawn;
    outcome.draws_to_stop = stop_at;
    outcome.swaps_done = state.swaps_done;
    return outcome;
}

double simulation_cost(const AlbumParams& params, std::uint64_t stickers_drawn) {
    const std::uint64_t packs = (stickers_drawn + params.pack_size - 1) / params.pack_size;
    return packs * params.pack_price + params.display_price +
           (1.0 + params.non_collectors) * params.replacement_limit * params.replacement_price;
}

SimReport run_simulation(const AlbumParams& params, const SwapSpec& swap,
                         std::uint64_t seed, std::uint64_t trials,
                         std::vector<TrialRecord>* dump) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const auto outcomes = run_trials(params, swap, seed, trials);

    std::vector<double> drawn, to_stop, costs;
    drawn.reserve(trials);
    to_stop.reserve(trials);
    costs.reserve(trials);
    double swaps_total = 0.0;
    for (const auto& o : outcomes) {
        drawn.push_back(static_cast<double>(o.stickers_drawn));
        to_stop.push_back(static_cast<double>(o.draws_to_stop));
        costs.push_back(simulation_cost(params, o.stickers_drawn));
        swaps_total += o.swaps_done;
    }
    if (dump) {
        dump->clear();
        dump->reserve(trials);
        for (std::uint64_t i = 0; i < trials; ++i) {
            dump->push_back(TrialRecord{i, outcomes[i].stickers_drawn, outcomes[i].packs,
                                        outcomes[i].swaps_done,
                                        std::lround(costs[i] * 100.0)});
        }
    }

    SimReport report;
    report.trials = trials;
    report.seed = seed;
    report.generator = "mt19937_64, substream seed = splitmix64(seed ^ splitmix64(trial_index))";
    const double n = static_cast<double>(trials);
    report.mean_stickers = std::accumulate(drawn.begin(), drawn.end(), 0.0) / n;
    report.sigma_stickers = sample_sigma(drawn, report.mean_stickers);
    report.mean_draws_to_stop = std::accumulate(to_stop.begin(), to_stop.end(), 0.0) / n;
    report.sigma_draws_to_stop = sample_sigma(to_stop, report.mean_draws_to_stop);
    report.mean_swaps = swaps_total / n;
    report.mean_cost = std::accumulate(costs.begin(), costs.end(), 0.0) / n;
    report.sigma_cost = sample_sigma(costs, report.mean_cost);
    std::sort(costs.begin(), costs.end());
    report.cost_q025 = quantile(costs, 0.025);
    report.cost_q50 = quantile(costs, 0.5);
    report.cost_q975 = quantile(costs, 0.975);
    report.stderr_mean_stickers = report.sigma_draws_to_stop / std::sqrt(n);
    report.stderr_mean_cost = report.sigma_cost / std::sqrt(n);
    return report;
}

std::string render_trial_csv(const std::vector<TrialRecord>& records) {
    std::string out = "trial_index,stickers_drawn,packs,swaps_done,cost_cents\n";
    char line[128];
    for (const auto& r : records) {
        std::snprintf(line, sizeof(line), "%llu,%llu,%llu,%d,%ld\n",
                      static_cast<unsigned long long>(r.trial_index),
                      static_cast<unsigned long long>(r.stickers_drawn),
                      static_cast<unsigned long long>(r.packs), r.swaps_done, r.cost_cents);
        out += line;
    }
    return out;
}

namespace {

// Exact variance of the pack-draw count for each strategy with a closed form.
// The waits are geometric with success probability m/B for m = K+1..B-d; a
// swapped wait contributes zero draws.
double analytic_variance(const AlbumParams& params, const SwapSpec& swap) {
    const double B = params.album_size;
    const long K = params.replacement_limit;
    const long rest = params.album_size - params.display_new;
    const int T = swap.quota;
    auto var_range = [&](long lo, long hi) { // waits with missing count in (lo, hi]
        return B * B * (harmonic2(hi) - harmonic2(lo)) - B * (harmonic(hi) - harmonic(lo));
    };
    switch (swap.strategy) {
        case SwapStrategy::None:
            return var_range(K, rest);
        case SwapStrategy::BestCase:
            return var_range(K + T, rest);
        case SwapStrategy::WorstCase:
            return var_range(K, rest - T);
        case SwapStrategy::RandomTiming: {
            // kept waits are a uniform (E-T)-subset of E: mixture variance is
            // the thinned per-wait variance plus the finite-population spread
            // of the subset means
            const long E = rest - K;
            if (E <= 1) return 0.0;
            const double kept = E - T;
            double mean_mu = 0.0, mean_mu2 = 0.0;
            for (long m = K + 1; m <= rest; ++m) {
                const double mu = B / m;
                mean_mu += mu;
                mean_mu2 += mu * mu;
            }
            mean_mu /= E;
            mean_mu2 /= E;
            const double pop_var = mean_mu2 - mean_mu * mean_mu;
            return (kept / E) * var_range(K, rest) +
                   kept * (E - kept) / (E - 1.0) * pop_var;
        }
        case SwapStrategy::DuplicateConstrained:
            return -1.0; // no closed form
    }
    return -1.0;
}

FactorResult analytic_factor(const AlbumParams& params, const SwapSpec& swap) {
    switch (swap.strategy) {
        case SwapStrategy::None:
            return factor_replacement_display(params, Mode::Harmonic);
        case SwapStrategy::BestCase:
            return factor_bounds(params, swap, Mode::Harmonic).first;
        case SwapStrategy::WorstCase:
            return factor_bounds(params, swap, Mode::Harmonic).second;
        default:
            return factor_swap_mean(params, swap, Mode::Harmonic);
    }
}

} // namespace

ValidationReport validate_against_analytics(const AlbumParams& params, const SwapSpec& swap,
                                            std::uint64_t seed, std::uint64_t trials,
                                            double tolerance_sigmas, double cost_tolerance) {
    if (tolerance_sigmas <= 0) throw std::invalid_argument("tolerance_sigmas must be > 0");
    const auto outcomes = run_trials(params, swap, seed, trials);
    const double n = static_cast<double>(trials);

    std::vector<double> to_stop, drawn, costs;
    to_stop.reserve(trials);
    for (const auto& o : outcomes) {
        to_stop.push_back(static_cast<double>(o.draws_to_stop));
        drawn.push_back(static_cast<double>(o.stickers_drawn));
        costs.push_back(simulation_cost(params, o.stickers_drawn));
    }

    ValidationReport report;
    report.sim.trials = trials;
    report.sim.seed = seed;
    report.sim.mean_draws_to_stop = std::accumulate(to_stop.begin(), to_stop.end(), 0.0) / n;
    report.sim.sigma_draws_to_stop = sample_sigma(to_stop, report.sim.mean_draws_to_stop);
    report.sim.mean_stickers = std::accumulate(drawn.begin(), drawn.end(), 0.0) / n;
    report.sim.sigma_stickers = sample_sigma(drawn, report.sim.mean_stickers);
    report.sim.mean_cost = std::accumulate(costs.begin(), costs.end(), 0.0) / n;
    report.sim.sigma_cost = sample_sigma(costs, report.sim.mean_cost);
    report.sim.stderr_mean_stickers = report.sim.sigma_draws_to_stop / std::sqrt(n);
    report.sim.stderr_mean_cost = report.sim.sigma_cost / std::sqrt(n);

    const FactorResult factor = analytic_factor(params, swap);
    report.analytic_mean_stickers = factor.mean_stickers;
    const double variance = analytic_variance(params, swap);
    report.analytic_sigma_stickers = variance >= 0.0 ? std::sqrt(variance) : 0.0;
    report.analytic_mean_cost =
        std::max(cost(params, factor), min_price(params));

    const bool closed_form = swap.strategy != SwapStrategy::DuplicateConstrained;
    if (closed_form) {
        // sim total = pack draws to the cutoff + display + replacement
        const double sim_total = report.sim.mean_draws_to_stop + params.display_size +
                                 params.replacement_limit;
        const double se = report.sim.stderr_mean_stickers;
        report.z_mean = se > 0.0 ? (sim_total - report.analytic_mean_stickers) / se
                                 : sim_total - report.analytic_mean_stickers;
        report.mean_checked = true;
        report.mean_ok = std::abs(report.z_mean) <= tolerance_sigmas;

        // z for the sample variance, SE from the empirical fourth moment
        const double s2 = report.sim.sigma_draws_to_stop * report.sim.sigma_draws_to_stop;
        double m4 = 0.0;
        for (double x : to_stop) {
            const double dev = x - report.sim.mean_draws_to_stop;
            m4 += dev * dev * dev * dev;
        }
        m4 /= n;
        const double se_var =
            std::sqrt(std::max(m4 - s2 * s2 * (n - 3.0) / (n - 1.0), 0.0) / n);
        report.z_variance = se_var > 0.0 ? (s2 - variance) / se_var : s2 - variance;
        report.sigma_checked = true;
        report.sigma_ok = std::abs(report.z_variance) <= tolerance_sigmas;
    }

    const double cost_gap = report.sim.mean_cost - report.analytic_mean_cost;
    report.cost_rel_diff = report.analytic_mean_cost != 0.0
                               ? cost_gap / report.analytic_mean_cost
                               : (cost_gap == 0.0 ? 0.0 : HUGE_VAL);
    report.cost_ok = std::abs(report.cost_rel_diff) <= cost_tolerance;
    report.pass = report.cost_ok && (!report.mean_checked || report.mean_ok) &&
                  (!report.sigma_checked || report.sigma_ok);
    return report;
}

} // namespace album
