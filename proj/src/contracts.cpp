#include "mpslab/contracts.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "mpslab/checked.hpp"

namespace mpslab {

namespace {

std::int64_t pow10_i64(int e) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) v = checked_mul(v, 10);
    return v;
}

ContractSpec make(const std::string& sym, std::int64_t mant, int exp,
                  std::int64_t tick_value_cents, const std::string& months,
                  std::int64_t init_margin = 0, std::int64_t maint_margin = 0,
                  int reporting_div = 1) {
    ContractSpec s;
    s.symbol = sym;
    s.delta = Decimal{mant, exp};
    s.tick_value_cents = tick_value_cents;
    // point value = tick value / delta = tick_value * 10^exp / mantissa
    s.point_value_cents_per_unit = checked_mul(tick_value_cents, pow10_i64(exp)) / mant;
    s.initial_margin_cents = init_margin;
    s.maintenance_margin_cents = maint_margin;
    s.months = months;
    s.reporting_unit_divisor = reporting_div;
    return s;
}

}  // namespace

double Decimal::to_double() const {
    return static_cast<double>(mantissa) * std::pow(10.0, -exponent);
}

std::string Decimal::to_string() const {
    if (exponent == 0) return std::to_string(mantissa);
    std::int64_t scale = pow10_i64(exponent);
    std::int64_t whole = mantissa / scale;
    std::int64_t frac = mantissa % scale;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld.%0*lld", static_cast<long long>(whole),
                  exponent, static_cast<long long>(frac));
    return buf;
}

void validate(const ContractSpec& spec) {
    if (spec.delta.mantissa <= 0 || spec.delta.exponent < 0)
        throw BadParams("delta must be positive for " + spec.symbol);
    if (spec.tick_value_cents <= 0)
        throw BadParams("tick value must be positive for " + spec.symbol);
    std::int64_t scaled = checked_mul(spec.tick_value_cents, pow10_i64(spec.delta.exponent));
    if (scaled % spec.delta.mantissa != 0 ||
        scaled / spec.delta.mantissa != spec.point_value_cents_per_unit)
        throw BadParams("point value * delta != tick value for " + spec.symbol);
    if (spec.maintenance_margin_cents > spec.initial_margin_cents)
        throw BadParams("maintenance margin exceeds initial margin for " + spec.symbol);
}

const std::vector<ContractSpec>& builtin_contract_table() {
    static const std::vector<ContractSpec> table = {
        make("ZB", 3125, 5, 3125, "HMUZ"),
        make("ZC", 25, 2, 1250, "HKNUZ"),
        make("ZS", 25, 2, 1250, "FHKNQUX"),
        make("ZW", 25, 2, 1250, "HKNUZ"),
        make("6A", 1, 4, 1000, "HMUZ"),
        make("6B", 1, 4, 625, "HMUZ"),
        make("6C", 1, 4, 1000, "HMUZ"),
        make("6E", 1, 4, 1250, "HMUZ"),
        make("6J", 1, 4, 1250, "HMUZ"),
        make("ES", 25, 2, 1250, "HMUZ", 112750, 102500),
        make("GE", 25, 4, 625, "HMUZ"),
        make("LE", 25, 3, 1000, "GJMQVZ"),
        make("HE", 25, 3, 1000, "GJKMNQVZ"),
        make("CL", 1, 2, 1000, "FGHJKMNQUVXZ"),
        make("GC", 1, 1, 1000, "GJMQVZ"),
        make("HG", 5, 4, 1250, "HKNUZ"),
        make("NG", 1, 3, 1000, "FGHJKMNQUVXZ", 0, 0, 10),
        make("SI", 5, 3, 2500, "HKNUZ"),
    };
    return table;
}

std::optional<ContractSpec> find_contract(const std::string& symbol) {
    for (const auto& s : builtin_contract_table())
        if (s.symbol == symbol) return s;
    return std::nullopt;
}

std::int64_t price_to_ticks(const std::string& text, const Decimal& delta) {
    if (text.empty()) throw MalformedLine("empty price field");
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '-' || text[pos] == '+') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::int64_t digits = 0;
    int frac_digits = -1;  // -1 until the decimal point is seen
    bool any = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (frac_digits >= 0) throw MalformedLine("price has two decimal points: " + text);
            frac_digits = 0;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw MalformedLine("bad price character in: " + text);
        digits = checked_add(checked_mul(digits, 10), c - '0');
        if (frac_digits >= 0) ++frac_digits;
        any = true;
    }
    if (!any) throw MalformedLine("no digits in price: " + text);
    if (frac_digits < 0) frac_digits = 0;
    if (negative) digits = -digits;

    // price = digits * 10^-frac_digits; ticks = price / delta
    //       = digits * 10^(delta.exponent - frac_digits) / delta.mantissa
    int p = delta.exponent - frac_digits;
    std::int64_t numer = digits;
    std::int64_t denom = delta.mantissa;
    if (p >= 0)
        numer = checked_mul(numer, pow10_i64(p));
    else
        denom = checked_mul(denom, pow10_i64(-p));
    if (numer % denom != 0)
        throw NonLatticePrice(text + " is not a multiple of delta " + delta.to_string());
    return numer / denom;
}

std::string ticks_to_price(std::int64_t ticks, const Decimal& delta) {
    std::int64_t scaled = checked_mul(ticks, delta.mantissa);  // price * 10^exponent
    if (delta.exponent == 0) return std::to_string(scaled);
    std::int64_t scale = pow10_i64(delta.exponent);
    bool neg = scaled < 0;
    std::int64_t mag = neg ? -scaled : scaled;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%lld.%0*lld", neg ? "-" : "",
                  static_cast<long long>(mag / scale), delta.exponent,
                  static_cast<long long>(mag % scale));
    return buf;
}

}  // namespace mpslab
