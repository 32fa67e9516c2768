#pragma once

#include <stdexcept>
#include <string>

namespace glv4 {

// Every failure the library reports derives from Error so callers can catch
// one type; the concrete subclass names the condition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GLV4_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// arith
GLV4_DEFINE_ERROR(DivisionByZero);
GLV4_DEFINE_ERROR(ContextMismatch);
GLV4_DEFINE_ERROR(InvalidField);

// catalog
GLV4_DEFINE_ERROR(ResidueConditionFailed);
GLV4_DEFINE_ERROR(PoleAtInput);
GLV4_DEFINE_ERROR(NoLargePrimeSubgroup);
GLV4_DEFINE_ERROR(AmbiguousOrder);
GLV4_DEFINE_ERROR(NoRoot);
GLV4_DEFINE_ERROR(NeitherRootMatches);
GLV4_DEFINE_ERROR(UnsupportedFamily);
GLV4_DEFINE_ERROR(InvalidCurve);

// lattice
GLV4_DEFINE_ERROR(PreconditionFailed);
GLV4_DEFINE_ERROR(RankDeficient);
GLV4_DEFINE_ERROR(SingularBasis);
GLV4_DEFINE_ERROR(DomainError);

// multiscalar / cli
GLV4_DEFINE_ERROR(DimensionMismatch);
GLV4_DEFINE_ERROR(MissingComparisonCurve);
GLV4_DEFINE_ERROR(FormatError);

#undef GLV4_DEFINE_ERROR

}  // namespace glv4
