#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zigzag/engine.hpp"
#include "zigzag/padic.hpp"

namespace zigzag {

/// COEFF := integer | 'u' | '(' COEFF ['+' COEFF '*' 'sqrt(p)'] ')'.
struct ApCoeff {
  enum class Kind { INTEGER, UNIT, GROUP };
  Kind kind = Kind::INTEGER;
  BigInt value = 0;                 // INTEGER
  std::vector<ApCoeff> parts;       // GROUP: x, or x and y for x + y·√p

  bool operator==(const ApCoeff&) const = default;
  bool uses_unit() const;
  std::string to_string() const;
};

/// TERM := [COEFF '*'] 'p' ['^' INT | '^(' INT '/' '2' ')'] | COEFF, with a sign.
/// INT may be negative.
struct ApTerm {
  enum class Exponent { NONE, INTEGER, HALF };
  bool negative = false;
  std::optional<ApCoeff> coeff;
  bool has_p = false;
  Exponent form = Exponent::NONE;
  std::int64_t exponent = 0;  // n for p^n, numerator for p^(n/2)

  bool operator==(const ApTerm&) const = default;
  /// Exponent of p in halves: 0 without p, 2 for a bare p.
  std::int64_t exponent_halves() const;
  std::string to_string() const;
};

/// A parsed a_p: a signed sum of coeff·p^e with e ∈ (1/2)Z, plus its source.
struct ApExpression {
  std::vector<ApTerm> terms;
  std::string source;
  ContextPtr context;

  bool uses_unit() const;
  /// ExactQuadratic unless 'u' occurs, in which case a PadicElement with
  /// 'u' the Teichmüller lift of the field generator.
  ApValue evaluate() const;
  PadicElement to_padic() const;
  Valuation slope() const;
  /// Canonical spelling: no whitespace, structure as parsed.
  std::string to_string() const;
};

/// Grammar only; throws ParseError("... at position N").
std::vector<ApTerm> parse_ap_terms(std::string_view text);

/// Parses and evaluates over E = Q_{p^f}(√p) with M π-adic digits.
/// Throws ParseError, ZeroAp, or NonPositiveSlope.
ApExpression parse_ap(std::string_view text, std::int64_t p, int f = 2, int precision = 16);

/// A single term coeff·p^e with an integer coefficient, as used for exclusions.
ApMonomial parse_ap_monomial(std::string_view text);

/// Settings shared by the subcommands.
struct CliConfig {
  int precision = 16;
  int residue_degree = 2;
  EngineConfig engine;
};

/// key = value lines; '#' starts a comment. Keys: precision, residue_degree,
/// caveat_disk, lag_exclusions (comma-separated monomials, may be empty) and
/// strict (true|false). Throws ParseError naming the line.
CliConfig parse_config(std::istream& in, CliConfig base = {});

}  // namespace zigzag
