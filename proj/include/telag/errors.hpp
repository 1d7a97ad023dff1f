// Error types shared across the library. Every failure mode maps onto one
// of these so callers (and the CLI exit-code mapping) can distinguish bad
// configuration, bad input data, and numerical degeneracy.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace telag {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite input values, mismatched lengths, empty windows.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Not enough observations for the requested estimator (e.g. T <= k).
class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

// Estimation is undefined on the data (all points identical, constant series).
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// Wrong dimensionality for the operation (e.g. copula entropy of one column).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid estimator / scan / simulator configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File system and parse failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Dataset schema problems (missing or ambiguous columns).
class SchemaError : public Error {
 public:
  using Error::Error;
};

namespace detail {

// Rethrows the active exception with `prefix` prepended, preserving its type.
[[noreturn]] inline void rethrow_with_prefix(const std::string& prefix) {
  try {
    throw;
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(prefix + e.what());
  } catch (const InsufficientSampleError& e) {
    throw InsufficientSampleError(prefix + e.what());
  } catch (const DegenerateSampleError& e) {
    throw DegenerateSampleError(prefix + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  }
}

}  // namespace detail

// Runs `fn`, prefixing any telag error it throws with `context + ": "`.
template <typename Fn>
auto with_context(const std::string& context, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    detail::rethrow_with_prefix(context + ": ");
  }
}

}  // namespace telag
