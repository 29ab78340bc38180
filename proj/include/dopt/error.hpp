#pragma once

#include <stdexcept>
#include <string>

namespace dopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tables, ill-typed morphisms, endpoint mismatches.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A hom-category is not finite, so generic coend enumeration is refused.
class InfiniteHomError : public Error {
 public:
  using Error::Error;
};

/// A decoded presheaf value depends on the chosen witness of an optic.
class WitnessDependenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dopt
