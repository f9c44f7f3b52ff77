#include "ddmls/error.hpp"

namespace ddmls {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveCellSize: return "NonPositiveCellSize";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::EmptyNodeSet: return "EmptyNodeSet";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::NegativeRadius: return "NegativeRadius";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorCode::InsufficientNodes: return "InsufficientNodes";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::EmptyErrors: return "EmptyErrors";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::StudyFailed: return "StudyFailed";
  }
  return "Unknown";
}

}  // namespace ddmls
