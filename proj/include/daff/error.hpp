#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace daff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DAFF_DEFINE_ERROR(Name)                         \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& what)              \
        : Error(std::string(#Name ": ") + what) {}      \
  }

DAFF_DEFINE_ERROR(SingularMatrix);
DAFF_DEFINE_ERROR(DimMismatch);
DAFF_DEFINE_ERROR(MissingSubstitute);
DAFF_DEFINE_ERROR(SpaceMismatch);
DAFF_DEFINE_ERROR(ZeroFunctional);
DAFF_DEFINE_ERROR(NotSpecial);
DAFF_DEFINE_ERROR(FiberMismatch);
DAFF_DEFINE_ERROR(BaseMismatch);
DAFF_DEFINE_ERROR(MalformedConstraint);
DAFF_DEFINE_ERROR(ConstraintViolated);
DAFF_DEFINE_ERROR(ZeroForm);
DAFF_DEFINE_ERROR(DuplicateName);
DAFF_DEFINE_ERROR(UnresolvedReference);
DAFF_DEFINE_ERROR(UnknownSuite);
DAFF_DEFINE_ERROR(UnknownOp);
DAFF_DEFINE_ERROR(InvariantViolation);

#undef DAFF_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t col, std::vector<std::string> expected,
             const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::vector<std::string> expected_;
};

}  // namespace daff
