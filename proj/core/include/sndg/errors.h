#ifndef SNDG_ERRORS_H_
#define SNDG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sndg {

// Broad failure classes. The CLI maps each class to its own exit status.
enum class ErrorKind {
  kIo,
  kParse,
  kValidation,
  kBudget,
  kDomain,
  kStructure,
  kPrecondition,
  kVerification,
  kGeneration,
  kDegenerate,
  kInternal,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

// Malformed instance document.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error(ErrorKind::kParse, message) {}
};

// Well-formed document that violates a Game invariant. `field` names the
// offending entry, e.g. "edges[2].cost".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(ErrorKind::kValidation, field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The requested exhaustive computation exceeds its configured cap.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what_exceeded, unsigned long long size,
              unsigned long long budget)
      : Error(ErrorKind::kBudget,
              what_exceeded + " " + std::to_string(size) +
                  " exceeds budget " + std::to_string(budget)),
        size_(size),
        budget_(budget) {}

  unsigned long long size() const { return size_; }
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long size_;
  unsigned long long budget_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorKind::kDomain, message) {}
};

// An input structure (forest, shared core, ...) does not have the shape an
// operation requires.
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& message)
      : Error(ErrorKind::kStructure, message) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error(ErrorKind::kPrecondition, message) {}
};

// A verified inequality failed. Carries a full textual breakdown.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& message)
      : Error(ErrorKind::kVerification, message) {}
};

class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& message)
      : Error(ErrorKind::kGeneration, message) {}
};

// Ratios against a zero-cost optimum are undefined.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& message)
      : Error(ErrorKind::kDegenerate, message) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error(ErrorKind::kInternal, message) {}
};

}  // namespace sndg

#endif  // SNDG_ERRORS_H_
