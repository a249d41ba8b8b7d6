#pragma once

#include <stdexcept>
#include <string>

namespace qde {

enum class ErrorCode {
  DegenerateBasis,
  DefectiveMatrix,
  Diagonalizable,
  Precondition,
  TViolating,
  Divergence,
  Unsupported,
  InternalInconsistency,
  ModeSingularity,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qde
