#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpslab/errors.hpp"

namespace mpslab {

// Exact decimal: value = mantissa * 10^-exponent.  Keeps the minimum price
// fluctuation representable without binary floating point.
struct Decimal {
    std::int64_t mantissa = 0;
    int exponent = 0;

    double to_double() const;
    std::string to_string() const;
};

struct ContractSpec {
    std::string symbol;
    Decimal delta;                               // minimum price fluctuation
    std::int64_t tick_value_cents = 0;           // cents per delta per contract
    std::int64_t point_value_cents_per_unit = 0; // cents per 1.0 price point
    std::int64_t initial_margin_cents = 0;
    std::int64_t maintenance_margin_cents = 0;
    std::string months;                          // listed month codes
    int reporting_unit_divisor = 1;              // presentation only
};

// Throws BadParams unless point_value_cents_per_unit * delta equals
// tick_value_cents exactly and the margins are ordered.
void validate(const ContractSpec& spec);

const std::vector<ContractSpec>& builtin_contract_table();
std::optional<ContractSpec> find_contract(const std::string& symbol);

// Parses a decimal price string ("1669", "638.75") into integer delta-ticks.
// Throws NonLatticePrice when the value is not an exact multiple of delta and
// MalformedLine for unparseable text.
std::int64_t price_to_ticks(const std::string& text, const Decimal& delta);

// Renders integer delta-ticks back to the canonical decimal string.
std::string ticks_to_price(std::int64_t ticks, const Decimal& delta);

}  // namespace mpslab
