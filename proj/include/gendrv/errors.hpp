#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gendrv {

// Base for every library exception so callers can catch the whole family.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested interpolant degree outside {1, 2, 3}.
struct InvalidDegree : Error {
  explicit InvalidDegree(int degree)
      : Error("derivator degree must be 1, 2 or 3, got " +
              std::to_string(degree)),
        degree(degree) {}
  int degree;
};

// Sample nodes coincide or the interpolation system cannot be solved.
struct SingularSystem : Error {
  using Error::Error;
};

// Analytic coefficients requested from a target without a derivative tower.
struct MissingTower : Error {
  MissingTower() : Error("target function carries no derivative tower") {}
};

// Leading cubic coefficient vanishes relative to the others.
struct DegenerateCubic : Error {
  using Error::Error;
};

// Evaluation outside a function's domain (log/sqrt of a negative value,
// division by zero, non-finite sample values).
struct DomainError : Error {
  using Error::Error;
};

// Expression text rejected by the parser. offset is the byte position of the
// offending token; expected describes what would have been legal there.
struct ParseError : Error {
  ParseError(std::size_t offset, std::string expected_what)
      : Error("parse error at offset " + std::to_string(offset) +
              ": expected " + expected_what),
        offset(offset),
        expected(std::move(expected_what)) {}
  std::size_t offset;
  std::string expected;
};

// '^' applied with anything other than an integer literal exponent.
struct ExponentError : Error {
  explicit ExponentError(std::size_t offset)
      : Error("exponent at offset " + std::to_string(offset) +
              " must be an integer literal"),
        offset(offset) {}
  std::size_t offset;
};

// Filesystem failure while writing results.
struct IoError : Error {
  IoError(const std::string& path, const std::string& cause)
      : Error("cannot write '" + path + "': " + cause), path(path) {}
  std::string path;
};

}  // namespace gendrv
