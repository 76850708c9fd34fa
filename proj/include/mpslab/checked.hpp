#pragma once

#include <cstdint>

#include "mpslab/errors.hpp"

namespace mpslab {

// Money and positions are 64-bit integers everywhere; arithmetic that could
// exceed the range must fail loudly instead of wrapping.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("int64 addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("int64 subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("int64 multiplication overflow");
    return r;
}

inline std::int64_t checked_abs(std::int64_t a) {
    if (a == INT64_MIN) throw OverflowError("abs(INT64_MIN)");
    return a < 0 ? -a : a;
}

}  // namespace mpslab
