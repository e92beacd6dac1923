#pragma once

#include <stdexcept>
#include <string>

namespace specforge {

// Typed computational errors. The CLI maps `kind` to a machine-readable
// error code; everything else treats these as ordinary exceptions.
enum class ErrorKind {
  Domain,                // bad argument (non-prime modulus, non-monic input, ...)
  DegenerateInput,       // zero polynomial / vanishing discriminant
  Lift,                  // Hensel lift on a non-coprime pair
  IrregularCase,         // inseparable residual; needs machinery we do not ship
  WildCase,              // p divides a ramification index
  RamifiedPrime,         // Frobenius asked at a ramified prime
  InconsistentSamples,   // inertia samples disagree across primes
  NoUsablePrime,         // no sampling prime below the search bound
  NotFound,              // residue / capture search exhausted
  WitnessNotFound,       // branch polynomial has no root mod p
  DerivativeVanishes,    // branch polynomial inseparable mod p
  BadPrimeForBranch,     // prime fails to unitize the branch point
  Syntax,                // polynomial expression parse error
  Usage,                 // CLI misuse
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Lift: return "LiftError";
    case ErrorKind::IrregularCase: return "IrregularCase";
    case ErrorKind::WildCase: return "WildCase";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::InconsistentSamples: return "InconsistentSamples";
    case ErrorKind::NoUsablePrime: return "NoUsablePrime";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::BadPrimeForBranch: return "BadPrimeForBranch";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

// Parse errors carry the byte offset of the offending character.
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::Syntax,
              message + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace specforge
