#pragma once

#include <stdexcept>
#include <string>

namespace gis {

// Base of every error raised by the library. Each subclass corresponds to one
// failure class so callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define GIS_DEFINE_ERROR(Name)                                                 \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

GIS_DEFINE_ERROR(NotPrimePower);
GIS_DEFINE_ERROR(DivideByZero);
GIS_DEFINE_ERROR(InvalidArgs);
GIS_DEFINE_ERROR(ZeroSpace);
GIS_DEFINE_ERROR(DimensionMismatch);
GIS_DEFINE_ERROR(ResourceLimit);
GIS_DEFINE_ERROR(IndexOutOfRange);
GIS_DEFINE_ERROR(TrivialSet);
GIS_DEFINE_ERROR(WrongEigenvalue);
GIS_DEFINE_ERROR(WrongDimension);
GIS_DEFINE_ERROR(OddRequired);
GIS_DEFINE_ERROR(InvalidSpread);

#undef GIS_DEFINE_ERROR

// Malformed input file; carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace gis
