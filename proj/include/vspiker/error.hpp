#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vspiker {

enum class ErrorCode {
  // data
  MalformedRow,
  DuplicateTimestamp,
  EmptySeries,
  MalformedWindow,
  IrreconcilableGrid,
  GapTooLarge,
  SeriesTooShort,
  AnomalyInTrainingData,
  LengthMismatch,
  SingleClass,
  EmptySignal,
  Io,
  // configuration / arguments
  DegenerateDomain,
  BadFraction,
  BadWindow,
  InvalidArgument,
  MissingRecurrentParams,
  Config,
  CheckpointVersion,
  // runtime
  NeuronCapExceeded,
  DimensionMismatch,
  SpikeCountOutOfRange,
  InvalidValue,
};

enum class ErrorCategory { Config, Data, Runtime };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace vspiker
