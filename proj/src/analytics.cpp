#include "album/analytics.hpp"

#include <cmath>

namespace album {

namespace {

// Kahan summation, ascending magnitude.
double compensated_sum(long n, double (*term)(long)) {
    double sum = 0.0, carry = 0.0;
    for (long i = n; i >= 1; --i) {
        const double y = term(i) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// ln(a) - ln(b) with the subtracted term dropped when b = 0, mirroring the
// H(0) = 0 convention. a = b = 0 collapses to 0.
double log_diff(long a, long b) {
    if (a == 0 && b == 0) return 0.0;
    if (a <= 0) throw std::domain_error("log mode requires a positive argument, got " +
                                        std::to_string(a));
    double value = std::log(static_cast<double>(a));
    if (b >= 1) value -= std::log(static_cast<double>(b));
    return value;
}

double harmonic_diff(long a, long b, Mode mode) {
    return mode == Mode::Harmonic ? harmonic(a) - harmonic(b) : log_diff(a, b);
}

FactorResult make_factor(double f, int album_size, Mode mode) {
    return FactorResult{f, album_size * f, mode};
}

} // namespace

double harmonic(long n) {
    if (n < 0) throw std::invalid_argument("harmonic: n must be >= 0");
    return compensated_sum(n, [](long i) { return 1.0 / static_cast<double>(i); });
}

double harmonic2(long n) {
    if (n < 0) throw std::invalid_argument("harmonic2: n must be >= 0");
    return compensated_sum(n, [](long i) {
        const double x = static_cast<double>(i);
        return 1.0 / (x * x);
    });
}

FactorResult factor_replacement_display(const AlbumParams& params, Mode mode) {
    params.validate();
    const int B = params.album_size;
    const double f = harmonic_diff(B - params.display_new, params.replacement_limit, mode) +
                     static_cast<double>(params.display_size + params.replacement_limit) / B;
    return make_factor(f, B, mode);
}

std::pair<FactorResult, FactorResult> factor_bounds(const AlbumParams& params,
                                                    const SwapSpec& swap, Mode mode) {
    params.validate();
    swap.validate(params);
    const int B = params.album_size;
    const int K = params.replacement_limit;
    const int rest = B - params.display_new;
    const double extra = static_cast<double>(params.display_size + K) / B;
    const double lower = harmonic_diff(rest, K + swap.quota, mode) + extra;
    const double upper = harmonic_diff(rest - swap.quota, K, mode) + extra;
    return {make_factor(lower, B, mode), make_factor(upper, B, mode)};
}

FactorResult factor_swap_mean(const AlbumParams& params, const SwapSpec& swap, Mode mode) {
    params.validate();
    swap.validate(params);
    const int B = params.album_size;
    const int K = params.replacement_limit;
    const double thinning = 1.0 - swap.rate(params);
    const double f = thinning * harmonic_diff(B - params.display_new, K, mode) +
                     static_cast<double>(params.display_size + K) / B;
    return make_factor(f, B, mode);
}

double stddev_stickers(const AlbumParams& params, const SwapSpec& swap, Mode mode) {
    params.validate();
    swap.validate(params);
    const double B = params.album_size;
    const long rest = params.album_size - params.display_new;
    const long K = params.replacement_limit;
    const double thinning = 1.0 - swap.rate(params);
    double variance;
    if (mode == Mode::Log) {
        if (K < 1) throw std::invalid_argument("log-mode stddev requires K >= 1");
        const double r = static_cast<double>(rest) / K;
        variance = B * (r - 1.0 - std::log(r)) * thinning;
    } else {
        variance = (B * B * (harmonic2(rest) - harmonic2(K)) -
                    B * (harmonic(rest) - harmonic(K))) * thinning;
    }
    // numerical error can push the radicand barely negative near B-d = K
    return std::sqrt(std::max(variance, 0.0));
}

double cost(const AlbumParams& params, const FactorResult& factor) {
    const double unit = params.per_sticker_pack_price();
    return params.album_size * factor.factor * unit +
           (1.0 + params.non_collectors) * params.replacement_limit *
               (params.replacement_price - unit) -
           (params.display_size * unit - params.display_price);
}

long min_packs(const AlbumParams& params) {
    const long swap_currency = params.display_size - params.display_new;
    const long need = std::max(0L, static_cast<long>(params.collectible_slots()) - swap_currency);
    return (need + params.pack_size - 1) / params.pack_size;
}

double min_price(const AlbumParams& params) {
    params.validate();
    return params.display_price + min_packs(params) * params.pack_price +
           params.replacement_limit * params.replacement_price;
}

CostEstimate estimate_cost(const AlbumParams& params, const SwapSpec& swap, Mode mode) {
    CostEstimate est;
    est.mean = cost(params, factor_swap_mean(params, swap, mode));
    // Eq. 5's log closed form needs K >= 1; the exact variance covers K = 0.
    const Mode sigma_mode = (mode == Mode::Log && params.replacement_limit >= 1)
                                ? Mode::Log : Mode::Harmonic;
    est.sigma = stddev_stickers(params, swap, sigma_mode) * params.per_sticker_pack_price();
    const auto [lo, hi] = factor_bounds(params, swap, mode);
    est.lower = cost(params, lo);
    est.upper = cost(params, hi);
    est.band_lo = est.mean - 2.0 * est.sigma;
    est.band_hi = est.mean + 2.0 * est.sigma;
    est.min_price = min_price(params);
    return clamp_cost(est);
}

CostEstimate clamp_cost(CostEstimate estimate) {
    const double floor = estimate.min_price;
    auto raise = [&](double& value) {
        if (value < floor) {
            value = floor;
            estimate.clamped = true;
        }
    };
    raise(estimate.mean);
    raise(estimate.lower);
    raise(estimate.upper);
    raise(estimate.band_lo);
    raise(estimate.band_hi);
    return estimate;
}

FactorResult classic_swap_factor(int album_size, int collectors) {
    if (album_size < 3) throw std::domain_error("community baseline requires B >= 3");
    if (collectors < 1) throw std::invalid_argument("collector count must be >= 1");
    const double B = album_size;
    const double f = (std::log(B) + (collectors - 1) * std::log(std::log(B))) / collectors;
    return make_factor(f, album_size, Mode::Log);
}

FactorResult classic_swap_factor_limit(int album_size) {
    if (album_size < 3) throw std::domain_error("community baseline requires B >= 3");
    return make_factor(std::log(std::log(static_cast<double>(album_size))), album_size,
                       Mode::Log);
}

FactorResult refuted_claim_factor(int album_size, int pack_size) {
    if (album_size < 1 || pack_size < 1)
        throw std::invalid_argument("refuted baseline requires B >= 1 and P >= 1");
    return make_factor(harmonic(album_size / pack_size), album_size, Mode::Harmonic);
}

double expected_display_duplicates_random(int album_size, int display_draws) {
    if (album_size < 1) throw std::invalid_argument("B must be >= 1");
    if (display_draws < 0) throw std::invalid_argument("D must be >= 0");
    const double B = album_size;
    return display_draws - B * (1.0 - std::pow(1.0 - 1.0 / B, display_draws));
}

StangeResult stange_economics(int displays_per_stange, int display_size, int album_size,
                              double display_price, double fill_efficiency) {
    if (displays_per_stange < 1 || display_size < 1 || album_size < 1 || display_price <= 0)
        throw std::invalid_argument("stange parameters must be positive");
    if (fill_efficiency <= 0.0 || fill_efficiency > 1.0)
        throw std::invalid_argument("fill_efficiency must be in (0, 1]");
    StangeResult result;
    result.ideal_albums = static_cast<double>(displays_per_stange) * display_size / album_size;
    result.albums = static_cast<long>(std::floor(result.ideal_albums * fill_efficiency));
    if (result.albums == 0)
        throw std::domain_error("stange too small: fills no complete album");
    result.cost_per_album = displays_per_stange * display_price / result.albums;
    return result;
}

Table1 table1_factors(int album_size, int replacement_limit, int display_size,
                      int display_new, int swap_quota) {
    AlbumParams params;
    params.album_size = album_size;
    params.replacement_limit = replacement_limit;
    params.display_size = display_size;
    params.display_new = display_new;
    params.validate();
    const double B = album_size;
    const double K = replacement_limit;
    if (replacement_limit < 1)
        throw std::invalid_argument("table requires K >= 1 for the replacement columns");

    auto thinned = [&](double base, double extra, int slots) {
        const double t = slots > 0 ? static_cast<double>(swap_quota) / slots : 1.0;
        return (1.0 - t) * base + extra;
    };

    Table1 table;
    table.single_none = std::log(B);
    table.single_repl = std::log(B / K) + K / B;
    table.single_repl_disp = std::log((B - display_new) / K) +
                             (K + display_size) / B;
    table.community_none = std::log(std::log(B));
    table.swap_none = thinned(std::log(B), 0.0, album_size);
    table.swap_repl = thinned(std::log(B / K), K / B, album_size - replacement_limit);
    table.swap_repl_disp = thinned(std::log((B - display_new) / K),
                                   (display_size + K) / B,
                                   album_size - display_new - replacement_limit);
    return table;
}

} // namespace album
