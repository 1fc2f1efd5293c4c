#pragma once

#include <stdexcept>
#include <string>

namespace qstab {

// Base for every error raised by the library. The CLI maps the concrete
// type to the "kind" field of its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define QSTAB_DEFINE_ERROR(NAME)                                  \
    class NAME : public Error {                                   \
    public:                                                       \
        explicit NAME(const std::string& message)                 \
            : Error(#NAME, message) {}                            \
    }

QSTAB_DEFINE_ERROR(ParseError);
QSTAB_DEFINE_ERROR(ValidationError);
QSTAB_DEFINE_ERROR(BoundExceeded);
QSTAB_DEFINE_ERROR(SearchSpaceExceeded);
QSTAB_DEFINE_ERROR(ZeroObject);
QSTAB_DEFINE_ERROR(OutOfUniverse);
QSTAB_DEFINE_ERROR(NotSemistable);
QSTAB_DEFINE_ERROR(InvalidEmbedding);
QSTAB_DEFINE_ERROR(InvalidPath);
QSTAB_DEFINE_ERROR(RankUnsupported);
QSTAB_DEFINE_ERROR(UnknownBuiltin);
QSTAB_DEFINE_ERROR(SeesawViolation);
QSTAB_DEFINE_ERROR(InternalAssertion);
QSTAB_DEFINE_ERROR(OracleDisagreement);

#undef QSTAB_DEFINE_ERROR

} // namespace qstab
