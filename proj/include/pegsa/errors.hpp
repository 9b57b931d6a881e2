#pragma once

#include <stdexcept>
#include <string>

namespace pegsa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input string contains a symbol outside the declared alphabet.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A malformed grammar text, automaton document or machine description.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (frames, enumeration budget, step budget) was hit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A grammar assumed total diverged.
class TotalityError : public Error {
 public:
  using Error::Error;
};

/// The operation does not support this kind of input (e.g. wildcard patterns).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// No transition rule matched the current (state, symbol, neighbourhood).
class TransitionHole : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pegsa
