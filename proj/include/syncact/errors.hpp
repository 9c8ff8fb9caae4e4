#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syncact {

enum class ErrorCode {
  kInput,
  kShape,
  kNumeric,
  kFormat,
  kIndex,
  kParse,
  kIo,
};

// Stable identifier used in CLI diagnostics, e.g. "E_SHAPE".
std::string_view error_code_name(ErrorCode code);

// Process exit status the CLI uses for each error category.
int error_exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& m) : Error(ErrorCode::kInput, m) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& m) : Error(ErrorCode::kShape, m) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& m) : Error(ErrorCode::kNumeric, m) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& m) : Error(ErrorCode::kFormat, m) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& m) : Error(ErrorCode::kIndex, m) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& m) : Error(ErrorCode::kParse, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorCode::kIo, m) {}
};

}  // namespace syncact
