#pragma once

#include <stdexcept>
#include <string>

namespace freedim {

/// Base of every error raised by the library. The CLI maps these to exit code 1,
/// except ConfigError which maps to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FREEDIM_DEFINE_ERROR(Name)              \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(#Name ": " + what) {}           \
  }

// tracial-core
FREEDIM_DEFINE_ERROR(WeightError);
FREEDIM_DEFINE_ERROR(NotSelfAdjoint);
FREEDIM_DEFINE_ERROR(ShapeMismatch);
FREEDIM_DEFINE_ERROR(NotGenerating);
// vn-dimension
FREEDIM_DEFINE_ERROR(CenterResolutionError);
FREEDIM_DEFINE_ERROR(NotInvariant);
FREEDIM_DEFINE_ERROR(IntegralityError);
// cocycle-spaces
FREEDIM_DEFINE_ERROR(ChainViolation);
// derivation-lab
FREEDIM_DEFINE_ERROR(IllDefined);
FREEDIM_DEFINE_ERROR(ResidualTooLarge);
// group-tools
FREEDIM_DEFINE_ERROR(TooLarge);
FREEDIM_DEFINE_ERROR(NotGeneratingSet);
FREEDIM_DEFINE_ERROR(GroupTableError);
// cli-runner
FREEDIM_DEFINE_ERROR(ConfigError);
FREEDIM_DEFINE_ERROR(UnsupportedFormat);

#undef FREEDIM_DEFINE_ERROR

}  // namespace freedim
