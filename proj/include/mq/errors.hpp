#pragma once

#include <stdexcept>
#include <string>

namespace mq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files or out-of-contract arguments. CLI exit code 2.
struct ParseError : Error {
    using Error::Error;
};

// A requested materialization exceeds the configured caps. CLI exit code 3.
struct CapacityError : Error {
    using Error::Error;
};

// Mismatched dimensions between values that must agree.
struct DimensionError : Error {
    using Error::Error;
};

// A self-check or requested verification did not hold. CLI exit code 4.
struct VerificationError : Error {
    using Error::Error;
};

}  // namespace mq
