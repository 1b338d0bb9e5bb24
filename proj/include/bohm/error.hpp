#ifndef BOHM_ERROR_HPP
#define BOHM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bohm {

/// Base of every error raised by the library. `name()` is the stable
/// identifier the CLI prints on standard error.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual const char *name() const noexcept = 0;
};

#define BOHM_DEFINE_ERROR(Type, Base, Name)                                   \
  class Type : public Base {                                                  \
  public:                                                                     \
    using Base::Base;                                                         \
    [[nodiscard]] const char *name() const noexcept override { return Name; } \
  };

class NumericFailure : public Error {
public:
  using Error::Error;
};

BOHM_DEFINE_ERROR(DomainError, NumericFailure, "domain_error")
// Guidance velocity undefined: |psi|^2 under the density floor.
BOHM_DEFINE_ERROR(NodeError, NumericFailure, "node_error")
BOHM_DEFINE_ERROR(UnsupportedVariantError, NumericFailure, "unsupported_variant")
BOHM_DEFINE_ERROR(InfiniteConjugateError, NumericFailure, "infinite_conjugate")
BOHM_DEFINE_ERROR(ResolutionError, NumericFailure, "resolution_error")
BOHM_DEFINE_ERROR(NumericError, NumericFailure, "numeric_error")
BOHM_DEFINE_ERROR(EmptyImageError, NumericFailure, "empty_image")
BOHM_DEFINE_ERROR(ResourceError, Error, "resource_error")
BOHM_DEFINE_ERROR(ConfigError, Error, "config_error")

#undef BOHM_DEFINE_ERROR

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int numeric = 3;
inline constexpr int resource = 4;
} // namespace exit_code

inline int exit_code_for(const Error &e) noexcept {
  if (dynamic_cast<const ConfigError *>(&e) != nullptr) return exit_code::config;
  if (dynamic_cast<const ResourceError *>(&e) != nullptr) return exit_code::resource;
  return exit_code::numeric;
}

} // namespace bohm

#endif // BOHM_ERROR_HPP
