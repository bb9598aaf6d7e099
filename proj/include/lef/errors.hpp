#pragma once

#include <stdexcept>
#include <string>

namespace lef {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NonSquare : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class NotAComplex : public Error {
 public:
  using Error::Error;
};

class NotCochainMap : public Error {
 public:
  NotCochainMap(std::size_t degree, const std::string& what)
      : Error(what), degree_(degree) {}
  std::size_t degree() const { return degree_; }

 private:
  std::size_t degree_;
};

class NotFiltered : public Error {
 public:
  using Error::Error;
};

class NotSolvable : public Error {
 public:
  using Error::Error;
};

class IllDefinedAction : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class RestrictionEscape : public Error {
 public:
  using Error::Error;
};

}  // namespace lef
