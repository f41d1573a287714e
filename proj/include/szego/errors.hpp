#pragma once

#include <stdexcept>
#include <string>

namespace szego {

/// Base class of every error raised by the library. `kind()` is the stable
/// machine-readable tag used in CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SZEGO_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

// Evaluation point within the merge tolerance of a pole.
SZEGO_DEFINE_ERROR(PoleHit)
// Pole multiplicity exceeded the configured cap.
SZEGO_DEFINE_ERROR(DegenerateCollision)
SZEGO_DEFINE_ERROR(NotIntegrable)
// A pole sum handed to a Hardy-space routine has a pole in the closed upper half-plane.
SZEGO_DEFINE_ERROR(NotHardy)
SZEGO_DEFINE_ERROR(IllConditioned)
SZEGO_DEFINE_ERROR(SingularSystem)
SZEGO_DEFINE_ERROR(TailTooFat)
SZEGO_DEFINE_ERROR(Unstable)
SZEGO_DEFINE_ERROR(ConfigInvalid)

#undef SZEGO_DEFINE_ERROR

}  // namespace szego
