#include "entrex/error.hpp"

namespace entrex {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::LevelLocked: return "LevelLocked";
        case ErrorCode::UnknownLevel: return "UnknownLevel";
        case ErrorCode::IncompleteAnswers: return "IncompleteAnswers";
        case ErrorCode::InvalidAnswer: return "InvalidAnswer";
        case ErrorCode::IncompleteResponses: return "IncompleteResponses";
        case ErrorCode::RatingOutOfRange: return "RatingOutOfRange";
        case ErrorCode::EmptyTaxonomy: return "EmptyTaxonomy";
        case ErrorCode::MissingPlacement: return "MissingPlacement";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::NotAPermutation: return "NotAPermutation";
        case ErrorCode::UnknownSection: return "UnknownSection";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::InvalidDecision: return "InvalidDecision";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::SimulationOver: return "SimulationOver";
        case ErrorCode::AlreadyBankrupt: return "AlreadyBankrupt";
        case ErrorCode::NoActiveSimulation: return "NoActiveSimulation";
        case ErrorCode::NotSuccessful: return "NotSuccessful";
        case ErrorCode::EmptyBody: return "EmptyBody";
        case ErrorCode::BodyTooLong: return "BodyTooLong";
        case ErrorCode::InvalidRoom: return "InvalidRoom";
        case ErrorCode::UnknownPlayer: return "UnknownPlayer";
        case ErrorCode::Unauthorized: return "Unauthorized";
        case ErrorCode::BadRequest: return "BadRequest";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::StorageError: return "StorageError";
    }
    return "Unknown";
}

}  // namespace entrex
