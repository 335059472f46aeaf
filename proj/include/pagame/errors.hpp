#pragma once

#include <stdexcept>
#include <string>

namespace pagame {

// Bad input from the user: malformed notation, ill-formed proofs, bad flags.
class UserError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public UserError {
public:
    using UserError::UserError;
};

class IllegalMove : public UserError {
public:
    using UserError::UserError;
};

// A value outside what the implementation can materialise (huge finite exponents).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A strategy that does not move where it must, or moves illegally.
class BrokenStrategy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A violated invariant of the construction itself. Never expected on valid input.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FuelExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pagame
