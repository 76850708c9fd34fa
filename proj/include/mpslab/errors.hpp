#pragma once

#include <stdexcept>
#include <string>

namespace mpslab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MPSLAB_ERROR_TYPE(name)                                              \
    struct name : Error {                                                    \
        explicit name(const std::string& what) : Error(#name ": " + what) {} \
    }

MPSLAB_ERROR_TYPE(MalformedLine);
MPSLAB_ERROR_TYPE(NonLatticePrice);
MPSLAB_ERROR_TYPE(NegativeSize);
MPSLAB_ERROR_TYPE(TickOutsideCalendar);
MPSLAB_ERROR_TYPE(EmptySegment);
MPSLAB_ERROR_TYPE(EmptyRange);
MPSLAB_ERROR_TYPE(EmptySample);
MPSLAB_ERROR_TYPE(EmptyChain);
MPSLAB_ERROR_TYPE(EmptyTable);
MPSLAB_ERROR_TYPE(EmptyElements);
MPSLAB_ERROR_TYPE(NonMonotonicTime);
MPSLAB_ERROR_TYPE(CurrentOutsideLimits);
MPSLAB_ERROR_TYPE(DomainError);
MPSLAB_ERROR_TYPE(BadParams);
MPSLAB_ERROR_TYPE(RankOutOfDomain);
MPSLAB_ERROR_TYPE(NoConvergence);
MPSLAB_ERROR_TYPE(DegenerateClasses);
MPSLAB_ERROR_TYPE(ZeroExpected);
MPSLAB_ERROR_TYPE(TooShort);
MPSLAB_ERROR_TYPE(TooFewPoints);
MPSLAB_ERROR_TYPE(DegenerateCurve);
MPSLAB_ERROR_TYPE(IndexOutOfRange);
MPSLAB_ERROR_TYPE(InsufficientAccount);
MPSLAB_ERROR_TYPE(NonZeroNet);
MPSLAB_ERROR_TYPE(MismatchedFCost);
MPSLAB_ERROR_TYPE(OverflowError);
MPSLAB_ERROR_TYPE(UsageError);
MPSLAB_ERROR_TYPE(IoError);

#undef MPSLAB_ERROR_TYPE

}  // namespace mpslab
