#pragma once

#include <stdexcept>
#include <string>

namespace mstab {

// Validation errors map to CLI exit code 1, usage errors to 2.
class Error : public std::runtime_error {
 public:
  enum class Kind { Validation, Usage, Precision, Internal };
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(Kind::Validation, m) {}
};
struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error(Kind::Usage, m) {}
};
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& m) : Error(Kind::Precision, m) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error(Kind::Internal, m) {}
};

}  // namespace mstab
