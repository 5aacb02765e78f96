#include "mattekit/core/errors.hpp"

namespace mattekit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRangeValue: return "OutOfRangeValue";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonBinaryValue: return "NonBinaryValue";
    case ErrorCode::ZeroDimension: return "ZeroDimension";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::EmptyBackground: return "EmptyBackground";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::OddSplit: return "OddSplit";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::MissingPrediction: return "MissingPrediction";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

const char* to_string(Warning warning) {
  switch (warning) {
    case Warning::EmptyUnknown: return "EmptyUnknown";
    case Warning::NoFullyOpaqueRegion: return "NoFullyOpaqueRegion";
  }
  return "UnknownWarning";
}

}  // namespace mattekit
