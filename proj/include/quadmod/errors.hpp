#pragma once

#include <stdexcept>
#include <string>

namespace quadmod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A division that was required to be exact left a nonzero remainder.
class NonExactDivision : public Error {
public:
    using Error::Error;
};

/// Input to a mod-p routine was not squarefree.
class NotSquarefree : public Error {
public:
    using Error::Error;
};

class NotSquarefreeOverQ : public Error {
public:
    using Error::Error;
};

/// The requested size exceeds the configured degree budget.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class InvalidPeriod : public Error {
public:
    using Error::Error;
};

/// An identity that must hold by construction failed.
class InternalConsistency : public Error {
public:
    using Error::Error;
};

class EliminationFailure : public Error {
public:
    using Error::Error;
};

class MissingCoordinates : public Error {
public:
    using Error::Error;
};

class NotSeparable : public Error {
public:
    using Error::Error;
};

class Unstabilizable : public Error {
public:
    using Error::Error;
};

class CorruptCache : public Error {
public:
    using Error::Error;
};

}  // namespace quadmod
