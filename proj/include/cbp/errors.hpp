#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cbp {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad epsilon, item above bin
// size, colour out of range, ...). CLI maps this to exit code 2.
struct PreconditionError : Error {
    using Error::Error;
};

// Malformed external data (instance files, packings, inconsistent oracle).
// CLI maps this to exit code 2 as well.
struct ValidationError : Error {
    using Error::Error;
};

// A configured search budget ran out. CLI maps this to exit code 3.
struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& what, std::uint64_t best_found = 0)
        : Error(what), best_found(best_found) {}
    // best objective value seen before the budget ran out, 0 if none
    std::uint64_t best_found;
};

// Exact arithmetic left the 64-bit range. Deliberately loud: silent rounding
// would corrupt feasibility decisions.
struct RationalOverflow : Error {
    using Error::Error;
};

} // namespace cbp
