// Exception types shared across the library.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace addxor {

// Two operands carry different moduli. Mixing is rejected, never coerced.
struct modulus_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A dense table would exceed the hard size guard (q^k entries).
struct guard_exceeded : std::length_error {
  using std::length_error::length_error;
};

// An enumeration would exceed its configured cap.
struct cap_exceeded : std::length_error {
  using std::length_error::length_error;
};

// The polynomial has a free term, which canonical forms forbid.
struct free_term_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A monomial's weight exceeds 1, which canonical forms forbid.
struct weight_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Expression or identity text failed to parse; offset is the byte position.
struct parse_error : std::runtime_error {
  std::size_t offset;
  parse_error(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"),
        offset(off) {}
};

// A truth-table document is malformed (wrong length, value out of range, ...).
struct table_format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested modulus is outside the supported range for this operation.
struct unsupported_modulus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An exhaustive verification that must succeed did not.
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace addxor
