#pragma once

#include <stdexcept>
#include <string>

namespace sgen2 {

enum class Errc {
  NotMonic,
  Reducible,
  DatasheetInvalid,
  DatasheetRequired,
  DivisionByZero,
  IndexDivisor,
  ZeroElement,
  OrderBoundExceeded,
  NotContained,
  CardinalityTooSmall,
  HypothesisFails,
  SearchExhausted,
  NotStabilized,
  NotASubfield,
  InconsistentCM,
  IdentityFailed,
  NotInLattice,
  PrimeInS,
  ResidueFieldTooLarge,
  ConfigInvalid,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sgen2
