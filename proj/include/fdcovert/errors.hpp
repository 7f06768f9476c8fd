#ifndef FDCOVERT_ERRORS_HPP
#define FDCOVERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fdcovert {

/// Raised when a scenario value violates its documented range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The covertness constraint cannot be met with finite AN power (epsilon = 0).
class UnsatisfiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fdcovert

#endif
