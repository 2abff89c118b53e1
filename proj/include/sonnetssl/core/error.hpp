#pragma once

#include <stdexcept>
#include <string>

namespace sonnetssl {

// Root of every exception thrown by the library. Callers that only need to
// distinguish "bad input data" from programming errors catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SONNETSSL_DEFINE_ERROR(Name)     \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

SONNETSSL_DEFINE_ERROR(ParseError);
SONNETSSL_DEFINE_ERROR(SchemaError);
SONNETSSL_DEFINE_ERROR(DuplicateIdError);
SONNETSSL_DEFINE_ERROR(RangeError);
SONNETSSL_DEFINE_ERROR(LengthMismatchError);
SONNETSSL_DEFINE_ERROR(EmptyLexiconError);
SONNETSSL_DEFINE_ERROR(EmptyTokenListError);
SONNETSSL_DEFINE_ERROR(MissingEmbeddingError);
SONNETSSL_DEFINE_ERROR(ShapeError);
SONNETSSL_DEFINE_ERROR(DegenerateDataError);
SONNETSSL_DEFINE_ERROR(DegenerateProblemError);
SONNETSSL_DEFINE_ERROR(KernelError);
SONNETSSL_DEFINE_ERROR(TooFewSamplesError);
SONNETSSL_DEFINE_ERROR(SingleClassError);
SONNETSSL_DEFINE_ERROR(TooFewPairsError);
SONNETSSL_DEFINE_ERROR(DomainError);
SONNETSSL_DEFINE_ERROR(ConfigError);

#undef SONNETSSL_DEFINE_ERROR

}  // namespace sonnetssl
