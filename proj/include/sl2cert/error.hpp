#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sl2cert {

enum class Errc {
  // rings
  MixedRings,
  InvalidRing,
  NotInRing,
  ParseError,
  ZeroIdeal,
  NotUnitInQuotient,
  OrderSearchExhausted,
  NoInfiniteOrderUnit,
  PellSearchExhausted,
  QuotientTooLarge,
  // sl2
  DeterminantNotOne,
  NonUnitDiagonal,
  // elemgen
  NonUnit,
  UnsupportedRing,
  SearchExhausted,
  // lemma
  ZeroCorner,
  UnitCongruenceViolated,
  FormCheckFailed,
  ZNotInIdeal,
  ScalarInput,
  // norms
  GeneratorsNotClosed,
  DegenerateQuotient,
  // cli
  InvalidCertificate,
};

std::string_view error_name(Errc code);

/// Name of the module an error code originates from ("rings", "sl2", ...).
std::string_view error_module(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }
  std::string_view module() const { return error_module(code_); }

 private:
  Errc code_;
};

}  // namespace sl2cert
