#ifndef FUSEKIT_ERROR_HPP
#define FUSEKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fusekit {

enum class ErrorCode {
  EnumerationCapExceeded = 1,
  AutCapExceeded = 2,
  NotNormal = 3,
  NotConjugate = 4,
  UnknownTag = 5,
  InconsistentPresentation = 6,
  ParseError = 7,
  SemanticError = 8,
  PreconditionViolated = 9,
  NotFullyNormalized = 10,
  BorelNotConstructed = 11,
  BadArgument = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace fusekit

#endif
