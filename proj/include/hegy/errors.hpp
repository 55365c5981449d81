#pragma once

#include <stdexcept>
#include <string>

namespace hegy {

/// Errors caused by bad flags or impossible option combinations.
/// Everything else derives from DataError; the CLI maps the two
/// categories to distinct exit codes.
class ConfigurationError : public std::runtime_error {
 public:
  explicit ConfigurationError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class SeriesTooShort : public DataError {
 public:
  explicit SeriesTooShort(const std::string& msg) : DataError(msg) {}
};

class DimensionMismatch : public DataError {
 public:
  explicit DimensionMismatch(const std::string& msg) : DataError(msg) {}
};

class SingularDesign : public DataError {
 public:
  explicit SingularDesign(const std::string& msg) : DataError(msg) {}
};

class ZeroVariance : public DataError {
 public:
  explicit ZeroVariance(const std::string& msg) : DataError(msg) {}
};

class ZeroResidualVariance : public DataError {
 public:
  explicit ZeroResidualVariance(const std::string& msg) : DataError(msg) {}
};

class AllColumnsRemoved : public DataError {
 public:
  explicit AllColumnsRemoved(const std::string& msg) : DataError(msg) {}
};

class EmptyPool : public DataError {
 public:
  explicit EmptyPool(const std::string& msg) : DataError(msg) {}
};

class ExplosiveRecursion : public DataError {
 public:
  explicit ExplosiveRecursion(const std::string& msg) : DataError(msg) {}
};

class BlockTooLong : public DataError {
 public:
  explicit BlockTooLong(const std::string& msg) : DataError(msg) {}
};

class ParseError : public DataError {
 public:
  explicit ParseError(const std::string& msg) : DataError(msg) {}
};

class MissingValue : public DataError {
 public:
  explicit MissingValue(const std::string& msg) : DataError(msg) {}
};

class LengthNotMultipleOfFour : public DataError {
 public:
  explicit LengthNotMultipleOfFour(const std::string& msg) : DataError(msg) {}
};

}  // namespace hegy
