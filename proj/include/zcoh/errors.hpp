#pragma once

#include <stdexcept>
#include <string>

namespace zcoh {

// Base class for all engine errors. Messages name the violated identity
// and carry a minimal witness (degree, element indices, matrix entries).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ZCOH_ERROR(NAME)                                              \
    struct NAME : Error {                                             \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

ZCOH_ERROR(OrderMismatch);
ZCOH_ERROR(NotASubgroup);
ZCOH_ERROR(NotNormal);
ZCOH_ERROR(NotNested);
ZCOH_ERROR(NoLambdaAction);
ZCOH_ERROR(NonEquivariantPairing);
ZCOH_ERROR(IncompatiblePairings);
ZCOH_ERROR(NotExact);
ZCOH_ERROR(CapExceeded);
ZCOH_ERROR(MalformedTriangle);
ZCOH_ERROR(MalformedDatum);
ZCOH_ERROR(TraceNotQuasiIso);
ZCOH_ERROR(LevelOutOfRange);
ZCOH_ERROR(ParseError);
ZCOH_ERROR(ValidationError);

#undef ZCOH_ERROR

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

}  // namespace zcoh
