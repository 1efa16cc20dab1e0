#pragma once

#include <stdexcept>
#include <string>

namespace padop {

// Every failure mode in the library maps to exactly one of these codes; the
// CLI prints the PascalCase name and chooses the exit status from the class
// of the code (malformed input vs. domain error).
enum class errc {
  prime_mismatch,
  division_by_zero,
  precision_exhausted,
  unsupported_prime,
  no_residue_root,
  ramified_case,
  singular,
  not_antisymmetric,
  not_symmetric,
  spectrum_not_split,
  repeated_residue_roots,
  repeated_eigenvalues,
  not_unitriangular,
  series_diverges,
  not_inner,
  no_block_structure,
  malformed_input,
  dimension_mismatch,
  domain_error,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::prime_mismatch: return "PrimeMismatch";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::unsupported_prime: return "UnsupportedPrime";
    case errc::no_residue_root: return "NoResidueRoot";
    case errc::ramified_case: return "RamifiedCase";
    case errc::singular: return "Singular";
    case errc::not_antisymmetric: return "NotAntisymmetric";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::spectrum_not_split: return "SpectrumNotSplit";
    case errc::repeated_residue_roots: return "RepeatedResidueRoots";
    case errc::repeated_eigenvalues: return "RepeatedEigenvalues";
    case errc::not_unitriangular: return "NotUnitriangular";
    case errc::series_diverges: return "SeriesDiverges";
    case errc::not_inner: return "NotInner";
    case errc::no_block_structure: return "NoBlockStructure";
    case errc::malformed_input: return "MalformedInput";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::domain_error: return "DomainError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace padop
