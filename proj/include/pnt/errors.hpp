#pragma once

#include <stdexcept>
#include <string>

namespace pnt {

// Domain violations (arguments outside a formula's validity range) are
// reported with std::domain_error; lookups past a table with std::out_of_range.

/// A request that would exceed the configured memory budget.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iteration failed to converge.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data or a computed quantity contradicts an expected structural fact.
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bound could not be certified, so no constants are emitted.
class certification_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pnt
