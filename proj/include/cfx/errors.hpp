#pragma once

#include <stdexcept>
#include <string>

namespace cfx {

// Domain failures: the input was well-formed but the requested result does
// not exist (a quotient that is not Laurent, a path that is not a loop, a
// search bound that was exhausted).  The CLI maps these to exit code 1.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what, std::string code_)
      : std::runtime_error(what), code(std::move(code_)) {}
  std::string code;
};

struct NotDivisible : DomainError {
  explicit NotDivisible(const std::string& what) : DomainError(what, "not-divisible") {}
};

struct NotALoop : DomainError {
  explicit NotALoop(const std::string& what) : DomainError(what, "not-a-loop") {}
};

struct BoundExceeded : DomainError {
  explicit BoundExceeded(const std::string& what) : DomainError(what, "bound-exceeded") {}
};

struct NoFactorization : DomainError {
  explicit NoFactorization(const std::string& what) : DomainError(what, "no-such-factorization") {}
};

struct DtNotFound : DomainError {
  explicit DtNotFound(const std::string& what) : DomainError(what, "dt-not-found") {}
};

struct Diverging : DomainError {
  explicit Diverging(const std::string& what) : DomainError(what, "diverging") {}
};

struct KernelMismatch : DomainError {
  explicit KernelMismatch(const std::string& what) : DomainError(what, "beta-not-in-kernel") {}
};

struct VerificationFailed : DomainError {
  explicit VerificationFailed(const std::string& what)
      : DomainError(what, "verification-failed") {}
};

struct InvarianceFailed : DomainError {
  explicit InvarianceFailed(const std::string& what) : DomainError(what, "invariance-failed") {}
};

// Malformed input (bad schema, out-of-range index, invalid matrix).  The CLI
// maps these, like std::invalid_argument, to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace cfx
