#ifndef GQV_CORE_ERROR_HPP_
#define GQV_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gqv {

// Mirrors the gqv_status codes of the C API.
enum class ErrorCode {
  InvalidArg = 1,
  Size = 2,
  Domain = 3,
  NotPsd = 4,
  OutOfRange = 5,
  Io = 6,
  Unsupported = 7,
  Internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace gqv

#endif  // GQV_CORE_ERROR_HPP_
