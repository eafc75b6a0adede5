#pragma once

#include <stdexcept>
#include <string>

namespace maxlin {

enum class ErrorCode {
    DimensionMismatch,
    NonPositive,
    CyclicSupport,
    TieDetected,
    TooLarge,
    ImpossibleContext,
    EdgeNotCritical,
    DegenerateBlock,
    Timeout,
    OverlappingSets,
    InvalidArgument,
    Parse,
    Validation,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace maxlin
