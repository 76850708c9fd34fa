#pragma once

#include <cstdint>
#include <span>

// Exhaustive maximum over every position path in {-1, 0, +1}^n, any open
// position closed at the last price.  Exponential; for cross-checking the
// dynamic program on short chains only.
inline std::int64_t max_pl_brute(std::span<const std::int64_t> prices,
                                 std::int64_t tick_value_cents,
                                 std::int64_t cost_cents) {
    const std::size_t n = prices.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    std::int64_t best = 0;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        std::int64_t cash = 0;
        std::int64_t prev = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t s = static_cast<std::int64_t>(c % 3) - 1;
            c /= 3;
            const std::int64_t u = s - prev;
            cash -= tick_value_cents * prices[i] * u +
                    cost_cents * (u < 0 ? -u : u);
            prev = s;
        }
        // mark any leftover position to the last price and close it at cost
        cash += tick_value_cents * prices[n - 1] * prev -
                cost_cents * (prev < 0 ? -prev : prev);
        best = std::max(best, cash);
    }
    return best;
}
