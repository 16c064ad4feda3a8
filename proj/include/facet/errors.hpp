#pragma once

#include <stdexcept>
#include <string>

namespace facet {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FACET_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(what) {}       \
  }

// lp-core
FACET_DEFINE_ERROR(DimensionMismatch);
FACET_DEFINE_ERROR(NonFiniteData);
FACET_DEFINE_ERROR(RankDeficient);
FACET_DEFINE_ERROR(SingularBasis);
FACET_DEFINE_ERROR(EnumerationTooLarge);
FACET_DEFINE_ERROR(Infeasible);

// facial reduction
FACET_DEFINE_ERROR(AuxiliarySolveFailed);
FACET_DEFINE_ERROR(EmptyFace);
FACET_DEFINE_ERROR(InconsistentRedundantRow);
FACET_DEFINE_ERROR(LemmaViolation);
FACET_DEFINE_ERROR(NotInFace);

// solvers
FACET_DEFINE_ERROR(NonPositiveInterior);

// generators
FACET_DEFINE_ERROR(DegenerateDraw);

// io
FACET_DEFINE_ERROR(UnsupportedSection);
FACET_DEFINE_ERROR(UnsupportedBound);
FACET_DEFINE_ERROR(SchemaVersionUnknown);
FACET_DEFINE_ERROR(CorruptDocument);

// Internal consistency violation; indicates a bug, not bad input.
FACET_DEFINE_ERROR(InternalError);

#undef FACET_DEFINE_ERROR

/// Parse failure with the 1-based line where it was detected.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace facet
