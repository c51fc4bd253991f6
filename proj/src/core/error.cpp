#include "betlab/core/error.hpp"

namespace betlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::OffLadderPrice: return "OffLadderPrice";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidLadder: return "InvalidLadder";
    case ErrorCode::EmptyFills: return "EmptyFills";
    case ErrorCode::NonPositiveAmount: return "NonPositiveAmount";
    case ErrorCode::MarketSuspended: return "MarketSuspended";
    case ErrorCode::AlreadyTerminal: return "AlreadyTerminal";
    case ErrorCode::UnknownBet: return "UnknownBet";
    case ErrorCode::MissingClassStats: return "MissingClassStats";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::InsufficientFrames: return "InsufficientFrames";
    case ErrorCode::TooFewValues: return "TooFewValues";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::PadWiderThanInput: return "PadWiderThanInput";
    case ErrorCode::HeadOutputNotSingleChannel: return "HeadOutputNotSingleChannel";
    case ErrorCode::GraphContainsForwardOnlyLayer: return "GraphContainsForwardOnlyLayer";
    case ErrorCode::MissingCategoryModel: return "MissingCategoryModel";
    case ErrorCode::EmptyRow: return "EmptyRow";
    case ErrorCode::EmptyColumn: return "EmptyColumn";
  }
  return "Unknown";
}

}  // namespace betlab
