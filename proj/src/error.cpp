#include "lvgraph/error.hpp"

namespace lvgraph {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::SkewConflict: return "SkewConflict";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::WeightDomainMismatch: return "WeightDomainMismatch";
    case ErrorKind::NotMorphism: return "NotMorphism";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ZeroDivision: return "ZeroDivision";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace lvgraph
