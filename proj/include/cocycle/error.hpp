#pragma once

#include <stdexcept>
#include <string>

namespace cocycle {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live in different value groups (variant tag, modulus or dimension differ).
class GroupMismatch : public Error {
public:
    using Error::Error;
};

class UnsupportedGroup : public Error {
public:
    using Error::Error;
};

// Depth, index or base-vector precondition violated.
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace cocycle
