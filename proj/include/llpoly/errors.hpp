#pragma once

#include <stdexcept>
#include <string>

namespace llpoly {

// Requested work exceeds a configured degree or enumeration cap.
class size_limit_error : public std::length_error {
public:
    size_limit_error(const std::string& what, unsigned cap)
        : std::length_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

    unsigned cap() const noexcept { return cap_; }

private:
    unsigned cap_;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller-side precondition that is not a domain issue (e.g. too few quadrature nodes).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace llpoly
