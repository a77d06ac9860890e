#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (FASTA, reads file, illegal symbols).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A precondition on arguments was violated (length mismatch, L > G, D >= L, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Exact computation refused because its cost exceeds the configured limit.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// Oracle input beyond its configured caps.
class OracleBudgetExceeded : public Error {
public:
  using Error::Error;
};

/// The consistent-assembly search exhausted its options (or its node budget).
class NoConsistentAssembly : public Error {
public:
  using Error::Error;
};

} // namespace spectra
