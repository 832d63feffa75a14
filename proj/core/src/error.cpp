#include "zkpol/error.hpp"

namespace zkpol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::UnsatisfiedWitness: return "UnsatisfiedWitness";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::MalformedProof: return "MalformedProof";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::OpenFailed: return "OpenFailed";
    case ErrorCode::DuplicateRecord: return "DuplicateRecord";
    case ErrorCode::NothingToMine: return "NothingToMine";
    case ErrorCode::TamperedRequest: return "TamperedRequest";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TamperedResponse: return "TamperedResponse";
    case ErrorCode::AlreadyServed: return "AlreadyServed";
    case ErrorCode::UnknownDigest: return "UnknownDigest";
    case ErrorCode::InvalidProof: return "InvalidProof";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace zkpol
