#include "sl2cert/error.hpp"

namespace sl2cert {

std::string_view error_name(Errc code) {
  switch (code) {
    case Errc::MixedRings: return "MixedRings";
    case Errc::InvalidRing: return "InvalidRing";
    case Errc::NotInRing: return "NotInRing";
    case Errc::ParseError: return "ParseError";
    case Errc::ZeroIdeal: return "ZeroIdeal";
    case Errc::NotUnitInQuotient: return "NotUnitInQuotient";
    case Errc::OrderSearchExhausted: return "OrderSearchExhausted";
    case Errc::NoInfiniteOrderUnit: return "NoInfiniteOrderUnit";
    case Errc::PellSearchExhausted: return "PellSearchExhausted";
    case Errc::QuotientTooLarge: return "QuotientTooLarge";
    case Errc::DeterminantNotOne: return "DeterminantNotOne";
    case Errc::NonUnitDiagonal: return "NonUnitDiagonal";
    case Errc::NonUnit: return "NonUnit";
    case Errc::UnsupportedRing: return "UnsupportedRing";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::ZeroCorner: return "ZeroCorner";
    case Errc::UnitCongruenceViolated: return "UnitCongruenceViolated";
    case Errc::FormCheckFailed: return "FormCheckFailed";
    case Errc::ZNotInIdeal: return "ZNotInIdeal";
    case Errc::ScalarInput: return "ScalarInput";
    case Errc::GeneratorsNotClosed: return "GeneratorsNotClosed";
    case Errc::DegenerateQuotient: return "DegenerateQuotient";
    case Errc::InvalidCertificate: return "InvalidCertificate";
  }
  return "Unknown";
}

std::string_view error_module(Errc code) {
  switch (code) {
    case Errc::MixedRings:
    case Errc::InvalidRing:
    case Errc::NotInRing:
    case Errc::ParseError:
    case Errc::ZeroIdeal:
    case Errc::NotUnitInQuotient:
    case Errc::OrderSearchExhausted:
    case Errc::NoInfiniteOrderUnit:
    case Errc::PellSearchExhausted:
    case Errc::QuotientTooLarge:
      return "rings";
    case Errc::DeterminantNotOne:
    case Errc::NonUnitDiagonal:
      return "sl2";
    case Errc::NonUnit:
    case Errc::UnsupportedRing:
    case Errc::SearchExhausted:
      return "elemgen";
    case Errc::ZeroCorner:
    case Errc::UnitCongruenceViolated:
    case Errc::FormCheckFailed:
    case Errc::ZNotInIdeal:
    case Errc::ScalarInput:
      return "lemma";
    case Errc::GeneratorsNotClosed:
    case Errc::DegenerateQuotient:
      return "norms";
    case Errc::InvalidCertificate:
      return "cli";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace sl2cert
