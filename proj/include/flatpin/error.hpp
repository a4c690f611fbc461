#ifndef FLATPIN_ERROR_HPP
#define FLATPIN_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatpin {

enum class ErrorKind {
  // arithmetic / algebra
  Overflow,
  DimensionMismatch,
  ConventionMismatch,
  NotPinElement,
  NotSignedPermutation,
  NotInvolution,
  // group validation
  NonCommuting,
  HolonomyCollapse,
  Torsion,
  NonIntegralSquare,
  NonIntegralCommutator,
  InvalidGroup,
  // structures
  NotOrientable,
  TooMany,
  StructuresExist,
  InvalidParameters,
  // invariants
  NotDiagonalType,
  // catalog / io
  UnknownName,
  BudgetExceeded,
  Parse,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConventionMismatch: return "ConventionMismatch";
    case ErrorKind::NotPinElement: return "NotPinElement";
    case ErrorKind::NotSignedPermutation: return "NotSignedPermutation";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::HolonomyCollapse: return "HolonomyCollapse";
    case ErrorKind::Torsion: return "Torsion";
    case ErrorKind::NonIntegralSquare: return "NonIntegralSquare";
    case ErrorKind::NonIntegralCommutator: return "NonIntegralCommutator";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::TooMany: return "TooMany";
    case ErrorKind::StructuresExist: return "StructuresExist";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::NotDiagonalType: return "NotDiagonalType";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer multiplication");
  return r;
}

}  // namespace detail

}  // namespace flatpin

#endif  // FLATPIN_ERROR_HPP
