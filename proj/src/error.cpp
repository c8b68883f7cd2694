#include "vspiker/error.hpp"

namespace vspiker {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::MalformedWindow: return "MalformedWindow";
    case ErrorCode::IrreconcilableGrid: return "IrreconcilableGrid";
    case ErrorCode::GapTooLarge: return "GapTooLarge";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::AnomalyInTrainingData: return "AnomalyInTrainingData";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptySignal: return "EmptySignal";
    case ErrorCode::Io: return "Io";
    case ErrorCode::DegenerateDomain: return "DegenerateDomain";
    case ErrorCode::BadFraction: return "BadFraction";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingRecurrentParams: return "MissingRecurrentParams";
    case ErrorCode::Config: return "Config";
    case ErrorCode::CheckpointVersion: return "CheckpointVersion";
    case ErrorCode::NeuronCapExceeded: return "NeuronCapExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SpikeCountOutOfRange: return "SpikeCountOutOfRange";
    case ErrorCode::InvalidValue: return "InvalidValue";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRow:
    case ErrorCode::DuplicateTimestamp:
    case ErrorCode::EmptySeries:
    case ErrorCode::MalformedWindow:
    case ErrorCode::IrreconcilableGrid:
    case ErrorCode::GapTooLarge:
    case ErrorCode::SeriesTooShort:
    case ErrorCode::AnomalyInTrainingData:
    case ErrorCode::LengthMismatch:
    case ErrorCode::SingleClass:
    case ErrorCode::EmptySignal:
    case ErrorCode::Io:
      return ErrorCategory::Data;
    case ErrorCode::DegenerateDomain:
    case ErrorCode::BadFraction:
    case ErrorCode::BadWindow:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingRecurrentParams:
    case ErrorCode::Config:
    case ErrorCode::CheckpointVersion:
      return ErrorCategory::Config;
    case ErrorCode::NeuronCapExceeded:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::SpikeCountOutOfRange:
    case ErrorCode::InvalidValue:
      return ErrorCategory::Runtime;
  }
  return ErrorCategory::Runtime;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace vspiker
