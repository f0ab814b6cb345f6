#ifndef CHROMACUT_ERRORS_HPP
#define CHROMACUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chromacut {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map the whole family onto one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHROMACUT_ERROR(Name)                 \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(std::string(#Name ": ") + what) {} \
  }

CHROMACUT_ERROR(ParseError);
CHROMACUT_ERROR(FormatError);
CHROMACUT_ERROR(DisconnectedError);
CHROMACUT_ERROR(CycleError);
CHROMACUT_ERROR(SingleCentroidError);
CHROMACUT_ERROR(SizeLimitError);
CHROMACUT_ERROR(SizeMismatchError);
CHROMACUT_ERROR(MixedDegreeError);
CHROMACUT_ERROR(RangeError);
CHROMACUT_ERROR(IncompleteTableError);
CHROMACUT_ERROR(InconsistentDataError);
CHROMACUT_ERROR(NotDoubleCentroidError);
CHROMACUT_ERROR(NotFoundWithinBound);
CHROMACUT_ERROR(FixtureError);

#undef CHROMACUT_ERROR

}  // namespace chromacut

#endif  // CHROMACUT_ERRORS_HPP
