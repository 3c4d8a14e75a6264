#pragma once

#include <stdexcept>
#include <string>

namespace oddcf {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ODDCF_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                         \
        explicit Name(const std::string& what) : Error(what) {}   \
    }

ODDCF_DEFINE_ERROR(PoleError);            // Moebius denominator vanished
ODDCF_DEFINE_ERROR(DomainError);          // point outside the map's interval
ODDCF_DEFINE_ERROR(ZeroInput);            // digit of 0 requested
ODDCF_DEFINE_ERROR(ZeroFuture);           // planar step from t = 0
ODDCF_DEFINE_ERROR(UncertainFloor);       // float too close to an integer
ODDCF_DEFINE_ERROR(PrecisionExhausted);   // escalation hit the precision cap
ODDCF_DEFINE_ERROR(MixedFieldError);      // arithmetic across sqrt(5)/sqrt(13)
ODDCF_DEFINE_ERROR(PatternMismatch);      // rewrite precondition failed
ODDCF_DEFINE_ERROR(UnsupportedAlpha);     // parameter outside supported range
ODDCF_DEFINE_ERROR(DensitySingular);      // 1 + x*y <= 0 on a rectangle
ODDCF_DEFINE_ERROR(OrbitDegenerate);      // orbit died before enough samples
ODDCF_DEFINE_ERROR(NonTerminatingGuard);  // exact orbit exceeded the step cap
ODDCF_DEFINE_ERROR(NeighborhoodTooWide);  // digit agreement failed after shrinks
ODDCF_DEFINE_ERROR(ParseError);           // malformed scalar / word text

#undef ODDCF_DEFINE_ERROR

}  // namespace oddcf
