#pragma once

#include <stdexcept>
#include <string>

namespace bihardy {

// Input rejected before any numerics ran (bad exponents, bad interval, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A density or derived function was evaluated outside its domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure could not produce a usable answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bihardy
