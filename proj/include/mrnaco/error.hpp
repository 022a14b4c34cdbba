#pragma once

#include <stdexcept>
#include <string>

namespace mrnaco {

/// Malformed or out-of-contract input (sequences, structures, table files, flags).
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A solver could not produce an answer (size bound exceeded, no feasible sample).
class SolverError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace mrnaco
