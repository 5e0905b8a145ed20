// Typed error conditions shared across the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace biworlds {

using BigInt = boost::multiprecision::cpp_int;

// Base class so the CLI can map library failures to exit codes uniformly.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A requested registry or structure exceeds the configured cap. Carries the
// exact count so callers can re-plan instead of guessing.
struct CapExceededError : Error {
  int level;
  BigInt exact_count;
  CapExceededError(int level_, BigInt count, const std::string& what)
      : Error(what), level(level_), exact_count(std::move(count)) {}
};

struct ParseError : Error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& what) : Error(what), position(pos) {}
};

struct EmptyGroupError : ParseError {
  using ParseError::ParseError;
};

struct UndeclaredSymbolError : ParseError {
  using ParseError::ParseError;
};

// lub over the precision order does not exist when both t and f are present.
struct PrecisionConflictError : Error {
  using Error::Error;
};

struct NotCompletedError : Error {
  using Error::Error;
};

struct ForeignBiworldError : Error {
  using Error::Error;
};

struct UnbuiltLevelError : Error {
  using Error::Error;
};

struct InfiniteDepthError : Error {
  using Error::Error;
};

struct DepthExceededError : Error {
  using Error::Error;
};

struct SampledStructureError : Error {
  using Error::Error;
};

struct UnknownFamilyError : Error {
  using Error::Error;
};

struct UnsupportedRuleError : Error {
  using Error::Error;
};

struct JsonFormatError : Error {
  using Error::Error;
};

}  // namespace biworlds
