#pragma once

#include <stdexcept>
#include <string>

namespace manakov {

/// Base for every failure raised by the library. kind() is a stable
/// machine-readable tag used in CLI failure reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MANAKOV_ERROR(Name)                                              \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}       \
  };

MANAKOV_ERROR(InvalidCurve)
MANAKOV_ERROR(DegenerateFiber)
MANAKOV_ERROR(MultipleRoot)
MANAKOV_ERROR(PairingFailure)
MANAKOV_ERROR(AmbiguousContinuation)
MANAKOV_ERROR(UnsupportedGenus)
MANAKOV_ERROR(QuadratureFailure)
MANAKOV_ERROR(SingularA)
MANAKOV_ERROR(ValidatorFailure)
MANAKOV_ERROR(NoneFound)
MANAKOV_ERROR(NearPole)
MANAKOV_ERROR(SingularTheta)
MANAKOV_ERROR(ThetaZero)
MANAKOV_ERROR(DegenerateCubic)
MANAKOV_ERROR(MapSingular)
MANAKOV_ERROR(RootNotFound)
MANAKOV_ERROR(OrderTooHigh)

#undef MANAKOV_ERROR

}  // namespace manakov
