#pragma once

#include <stdexcept>
#include <string>

namespace hyperlab {

// Bad arguments: out-of-range ranks, malformed sets, parameters outside
// their domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An instance would exceed a configured resource limit (table size,
// enumeration budget).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact integer arithmetic would not fit in 64 bits.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace hyperlab
