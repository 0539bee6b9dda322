#pragma once

#include <stdexcept>
#include <string>

namespace lurebench {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON, markup given to strict loaders, PBM, ...).
struct ParseError : Error {
  using Error::Error;
};

// Structurally well-formed input that violates a domain invariant. Carries
// the path of the offending field ("fields[2].name", "target_domain", ...).
struct ValidationError : Error {
  explicit ValidationError(std::string field_path, const std::string& what)
      : Error(field_path + ": " + what), field(std::move(field_path)) {}
  std::string field;
};

struct CompositionError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

struct CapacityError : Error {
  using Error::Error;
};

struct DecodeError : Error {
  using Error::Error;
};

struct UnknownClassError : Error {
  using Error::Error;
};

struct OptionMismatchError : Error {
  using Error::Error;
};

struct NoFormError : Error {
  using Error::Error;
};

struct NoCtaError : Error {
  using Error::Error;
};

struct ParamError : Error {
  using Error::Error;
};

struct ManifestError : Error {
  using Error::Error;
};

struct MissingProbeError : Error {
  using Error::Error;
};

struct BundleLoadError : Error {
  using Error::Error;
};

struct ClassError : Error {
  using Error::Error;
};

struct RedirectLoopError : Error {
  using Error::Error;
};

}  // namespace lurebench
