#pragma once

#include <stdexcept>
#include <string>

namespace fg {

// Every failure carries a short machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define FG_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

FG_DEFINE_ERROR(ParseError)
FG_DEFINE_ERROR(EmptyWord)
FG_DEFINE_ERROR(InvalidForm)
FG_DEFINE_ERROR(UnassignedVariable)
FG_DEFINE_ERROR(WitnessNotASolution)
FG_DEFINE_ERROR(LengthMismatch)
FG_DEFINE_ERROR(TupleNotLarge)
FG_DEFINE_ERROR(BadPeriod)
FG_DEFINE_ERROR(NoLargeOccurrence)
FG_DEFINE_ERROR(NoLongVariable)
FG_DEFINE_ERROR(EmptySidePiece)
FG_DEFINE_ERROR(InconsistentBoundary)
FG_DEFINE_ERROR(BaseNotASolution)
FG_DEFINE_ERROR(NonPositiveExponent)
FG_DEFINE_ERROR(NotAGammaCutEquation)

#undef FG_DEFINE_ERROR

}  // namespace fg
