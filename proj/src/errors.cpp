#include "syncact/errors.hpp"

namespace syncact {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput: return "E_INPUT";
    case ErrorCode::kShape: return "E_SHAPE";
    case ErrorCode::kNumeric: return "E_NUMERIC";
    case ErrorCode::kFormat: return "E_FORMAT";
    case ErrorCode::kIndex: return "E_INDEX";
    case ErrorCode::kParse: return "E_PARSE";
    case ErrorCode::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

int error_exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput: return 3;
    case ErrorCode::kShape: return 4;
    case ErrorCode::kNumeric: return 5;
    case ErrorCode::kFormat: return 6;
    case ErrorCode::kIndex: return 7;
    case ErrorCode::kParse: return 8;
    case ErrorCode::kIo: return 9;
  }
  return 1;
}

}  // namespace syncact
