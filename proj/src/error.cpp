#include "schottky/error.hpp"

namespace schottky {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParabolicOrElliptic: return "ParabolicOrElliptic";
    case ErrorCode::CIsZero: return "CIsZero";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::InvalidAngles: return "InvalidAngles";
    case ErrorCode::OverlappingCircles: return "OverlappingCircles";
    case ErrorCode::DepthLimit: return "DepthLimit";
    case ErrorCode::NearSingularity: return "NearSingularity";
    case ErrorCode::AllCoordinatesVanish: return "AllCoordinatesVanish";
    case ErrorCode::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DegenerateNormalization: return "DegenerateNormalization";
    case ErrorCode::NearUnitMultiplier: return "NearUnitMultiplier";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace schottky
