#pragma once

#include <stdexcept>
#include <string>

namespace wellposed {

// Every failure raised by the library derives from Error so callers can
// catch one type; the subclasses name the contract that was violated.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (negative time, p < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A spectral parameter hit an eigenvalue of the generator.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

class StabilityError : public Error {
 public:
  using Error::Error;
};

// Malformed system description or signal file.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Past-output window too short for the requested step.
class HorizonError : public Error {
 public:
  using Error::Error;
};

// A certificate needs a tail majorant (or an exact truncation) and has none.
class CertificateIncompleteError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wellposed
