#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncap {

// Base of every error raised by the library. `kind()` is the stable,
// machine-parsable class name the CLI prints on failure.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

#define NCAP_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

// ingest
NCAP_DEFINE_ERROR(FormatError);
NCAP_DEFINE_ERROR(EncodingError);
NCAP_DEFINE_ERROR(MissingValueError);
NCAP_DEFINE_ERROR(DegenerateColumnError);
NCAP_DEFINE_ERROR(ConfigError);

// normalize / aggregate
NCAP_DEFINE_ERROR(DomainError);
NCAP_DEFINE_ERROR(EmptyColumnError);
NCAP_DEFINE_ERROR(DimensionError);
NCAP_DEFINE_ERROR(ProductDomainError);
NCAP_DEFINE_ERROR(WeightError);

// level / geometry / ranking
NCAP_DEFINE_ERROR(InadmissibleProfileError);
NCAP_DEFINE_ERROR(EmptyInputError);
NCAP_DEFINE_ERROR(MethodMismatchError);
NCAP_DEFINE_ERROR(InsufficientMethodsError);

// cli
NCAP_DEFINE_ERROR(UsageError);

#undef NCAP_DEFINE_ERROR

}  // namespace ncap
