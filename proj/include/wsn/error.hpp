#ifndef WSN_ERROR_HPP_
#define WSN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wsn {

/// Failure categories. Values are stable: the C API reports them verbatim.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kDegenerate = 3,      // zero variance, denominator at or past 1, ...
  kRankDeficient = 4,
  kNotConverged = 5,
  kParse = 6,
  kIo = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace wsn

#endif  // WSN_ERROR_HPP_
