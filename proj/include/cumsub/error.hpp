#pragma once

#include <stdexcept>
#include <string>

namespace cumsub {

// Move or query that makes no sense for the position (terminal heap,
// unplayable action, wrong kind of ruleset).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A proven property failed to hold on computed data. Never expected;
// firing means a bug in the solver.
class theorem_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cumsub
