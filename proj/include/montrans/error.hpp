#pragma once

#include <stdexcept>
#include <string>

namespace montrans {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

class MalformedElement : public Error {
 public:
  using Error::Error;
};

class UnknownLetter : public Error {
 public:
  using Error::Error;
};

class InvalidMonoidSpec : public Error {
 public:
  using Error::Error;
};

// A document failed validation. `path()` locates the offending field,
// e.g. "/transitions/2/to".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A fixpoint iteration did not stabilize within its round cap. Only a
// non-noetherian monoid instance (or a bug) can cause this.
class IterationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An invariant that should hold by construction was violated.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class NotMinimalInput : public Error {
 public:
  using Error::Error;
};

class SearchBoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace montrans
