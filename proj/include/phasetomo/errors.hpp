#pragma once

#include <stdexcept>
#include <string>

namespace phasetomo {

/// Base of every typed failure raised by the library. `name()` is the
/// stable identifier echoed by the CLI.
class TomoError : public std::runtime_error {
public:
  TomoError(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

#define PHASETOMO_DEFINE_ERROR(Name)                                   \
  class Name : public TomoError {                                      \
  public:                                                              \
    explicit Name(const std::string& what) : TomoError(#Name, what) {} \
  };

PHASETOMO_DEFINE_ERROR(InvalidDimension)
PHASETOMO_DEFINE_ERROR(DimensionMismatch)
PHASETOMO_DEFINE_ERROR(NonHermitianInput)
PHASETOMO_DEFINE_ERROR(NonPSDInput)
PHASETOMO_DEFINE_ERROR(NonUnitaryOperand)
PHASETOMO_DEFINE_ERROR(DegenerateGround)
PHASETOMO_DEFINE_ERROR(PointOutOfRange)
PHASETOMO_DEFINE_ERROR(NotAxisAligned)
PHASETOMO_DEFINE_ERROR(NoOddCoefficient)
PHASETOMO_DEFINE_ERROR(EmptyRegion)
PHASETOMO_DEFINE_ERROR(InvalidBudget)
PHASETOMO_DEFINE_ERROR(UnknownRequest)
PHASETOMO_DEFINE_ERROR(UnknownFigure)
PHASETOMO_DEFINE_ERROR(ParseError)

#undef PHASETOMO_DEFINE_ERROR

/// Raised by prepare_coherent when every attempt hit the wrong peak.
class FilterFailed : public TomoError {
public:
  explicit FilterFailed(int attempts)
      : TomoError("FilterFailed",
                  "no successful filter sequence after " +
                      std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

private:
  int attempts_;
};

}  // namespace phasetomo
