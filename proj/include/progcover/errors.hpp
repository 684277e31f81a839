#pragma once

#include <stdexcept>
#include <string>

namespace progcover {

// Input outside an operation's mathematical domain (nonpositive where a
// positive value is needed, division by zero, non-prime p, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller misuse: mismatched fields, malformed literals, bad schema.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested size exceeds a documented cost guard.
class cost_guard_error : public usage_error {
public:
    using usage_error::usage_error;
};

// An operation's hypothesis does not hold for the supplied data; carries the
// offending witness value when one exists (e.g. the j with ratio^j rational).
class precondition_error : public domain_error {
public:
    precondition_error(const std::string& what, long witness)
        : domain_error(what), witness_(witness) {}
    long witness() const noexcept { return witness_; }

private:
    long witness_;
};

// Raised when a computed result contradicts a proven statement the library
// checks (a bound, a structural lemma, a constructive cover). Either a bug or a
// counterexample; the CLI maps it to exit status 2.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace progcover
