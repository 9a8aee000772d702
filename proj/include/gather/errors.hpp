#pragma once

#include <stdexcept>
#include <string>

namespace gather {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GATHER_DEFINE_ERROR(Name)              \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

GATHER_DEFINE_ERROR(EmptyInput);
GATHER_DEFINE_ERROR(InvalidInput);
GATHER_DEFINE_ERROR(DegenerateAngle);
GATHER_DEFINE_ERROR(NotLinear);
GATHER_DEFINE_ERROR(NotOccupied);
GATHER_DEFINE_ERROR(DegenerateCenter);
GATHER_DEFINE_ERROR(AllAtCenter);
GATHER_DEFINE_ERROR(LinearInput);
GATHER_DEFINE_ERROR(ClassWithoutUniqueWeber);
GATHER_DEFINE_ERROR(BivalentInput);
GATHER_DEFINE_ERROR(WrongClass);
GATHER_DEFINE_ERROR(ClassificationError);
GATHER_DEFINE_ERROR(InvariantViolation);
GATHER_DEFINE_ERROR(BivalentInitial);
GATHER_DEFINE_ERROR(TooFewRobots);

#undef GATHER_DEFINE_ERROR

}  // namespace gather
