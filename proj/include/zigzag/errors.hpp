#pragma once

#include <stdexcept>
#include <string>

namespace zigzag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ZIGZAG_DEFINE_ERROR(Name)                             \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

ZIGZAG_DEFINE_ERROR(PrecisionExhausted);
ZIGZAG_DEFINE_ERROR(InvalidWeight);
ZIGZAG_DEFINE_ERROR(InvalidArgument);
ZIGZAG_DEFINE_ERROR(MalformedLabel);
ZIGZAG_DEFINE_ERROR(SlopeOutOfRange);
ZIGZAG_DEFINE_ERROR(DegenerateT);
ZIGZAG_DEFINE_ERROR(ZeroAp);
ZIGZAG_DEFINE_ERROR(NonPositiveSlope);
ZIGZAG_DEFINE_ERROR(NonIntegral);
ZIGZAG_DEFINE_ERROR(NotInTable);
ZIGZAG_DEFINE_ERROR(BoundaryCase);
ZIGZAG_DEFINE_ERROR(IndexOutOfRange);
ZIGZAG_DEFINE_ERROR(UnknownLambda);
ZIGZAG_DEFINE_ERROR(NotInImage);
ZIGZAG_DEFINE_ERROR(SingularMatrix);
ZIGZAG_DEFINE_ERROR(WrongDegree);
ZIGZAG_DEFINE_ERROR(ParseError);

#undef ZIGZAG_DEFINE_ERROR

}  // namespace zigzag
