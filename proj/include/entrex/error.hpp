#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entrex {

/// Machine-readable failure categories shared by every module.  The string
/// form is what the HTTP layer reports as `error_code`.
enum class ErrorCode {
    ParseError,
    ValidationError,
    LevelLocked,
    UnknownLevel,
    IncompleteAnswers,
    InvalidAnswer,
    IncompleteResponses,
    RatingOutOfRange,
    EmptyTaxonomy,
    MissingPlacement,
    UnknownCategory,
    NotAPermutation,
    UnknownSection,
    DomainError,
    InvalidDecision,
    InvalidConfig,
    SimulationOver,
    AlreadyBankrupt,
    NoActiveSimulation,
    NotSuccessful,
    EmptyBody,
    BodyTooLong,
    InvalidRoom,
    UnknownPlayer,
    Unauthorized,
    BadRequest,
    NotFound,
    StorageError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace entrex
