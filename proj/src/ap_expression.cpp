#include "zigzag/ap_expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<ApTerm> expression() {
    std::vector<ApTerm> terms;
    skip_space();
    bool negative = false;
    if (peek() == '-') {
      ++pos_;
      negative = true;
    }
    terms.push_back(term(negative));
    while (true) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail("expected '+', '-' or end of input");
      ++pos_;
      terms.push_back(term(c == '-'));
    }
    return terms;
  }

 private:
  ApTerm term(bool negative) {
    ApTerm out;
    out.negative = negative;
    skip_space();
    if (peek() != 'p') {
      out.coeff = coeff();
      skip_space();
      if (peek() != '*') return out;
      ++pos_;
      skip_space();
      if (peek() != 'p') fail("expected 'p' after '*'");
    }
    ++pos_;
    out.has_p = true;
    skip_space();
    if (peek() != '^') return out;
    ++pos_;
    skip_space();
    if (peek() == '(') {
      ++pos_;
      out.form = ApTerm::Exponent::HALF;
      out.exponent = signed_literal();
      expect('/');
      skip_space();
      if (peek() != '2') fail("only the denominator 2 is allowed");
      ++pos_;
      expect(')');
    } else {
      out.form = ApTerm::Exponent::INTEGER;
      out.exponent = signed_literal();
    }
    return out;
  }

  ApCoeff coeff() {
    skip_space();
    ApCoeff out;
    const char c = peek();
    if (c == 'u') {
      ++pos_;
      out.kind = ApCoeff::Kind::UNIT;
      return out;
    }
    if (c == '(') {
      ++pos_;
      out.kind = ApCoeff::Kind::GROUP;
      out.parts.push_back(coeff());
      skip_space();
      if (peek() == '+') {
        ++pos_;
        out.parts.push_back(coeff());
        expect('*');
        skip_space();
        if (text_.substr(pos_, 7) != "sqrt(p)") fail("expected 'sqrt(p)'");
        pos_ += 7;
      }
      expect(')');
      return out;
    }
    out.kind = ApCoeff::Kind::INTEGER;
    out.value = integer_literal();
    return out;
  }

  BigInt integer_literal() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::int64_t signed_literal() {
    skip_space();
    const bool negative = peek() == '-';
    if (negative) ++pos_;
    const BigInt value = integer_literal();
    if (value > 1000000) fail("exponent too large");
    const auto out = value.convert_to<std::int64_t>();
    return negative ? -out : out;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

/// x + y·√p with rational x, y.
std::pair<BigRational, BigRational> exact_coeff(const ApCoeff& c, std::int64_t p) {
  switch (c.kind) {
    case ApCoeff::Kind::INTEGER:
      return {BigRational(c.value), BigRational(0)};
    case ApCoeff::Kind::UNIT:
      break;
    case ApCoeff::Kind::GROUP: {
      auto out = exact_coeff(c.parts[0], p);
      if (c.parts.size() == 2) {
        const auto [x, y] = exact_coeff(c.parts[1], p);
        out.first += y * p;
        out.second += x;
      }
      return out;
    }
  }
  throw InvalidArgument("the unit symbol has no exact value");
}

PadicElement padic_coeff(const ApCoeff& c, const ContextPtr& ctx) {
  switch (c.kind) {
    case ApCoeff::Kind::INTEGER:
      return PadicElement::from_integer(ctx, c.value);
    case ApCoeff::Kind::UNIT:
      return PadicElement::teichmuller(ctx, ctx->field()->generator());
    case ApCoeff::Kind::GROUP: {
      PadicElement out = padic_coeff(c.parts[0], ctx);
      if (c.parts.size() == 2) out = out + padic_coeff(c.parts[1], ctx) * PadicElement::uniformizer_power(ctx, 1);
      return out;
    }
  }
  throw InvalidArgument("unreachable coefficient kind");
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

int parse_int(const std::string& value, int line) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got \"" + value + "\"");
  }
  return out;
}

}  // namespace

bool ApCoeff::uses_unit() const {
  if (kind == Kind::UNIT) return true;
  return std::any_of(parts.begin(), parts.end(), [](const ApCoeff& c) { return c.uses_unit(); });
}

std::string ApCoeff::to_string() const {
  switch (kind) {
    case Kind::INTEGER: return value.str();
    case Kind::UNIT: return "u";
    case Kind::GROUP:
      if (parts.size() == 1) return "(" + parts[0].to_string() + ")";
      return "(" + parts[0].to_string() + "+" + parts[1].to_string() + "*sqrt(p))";
  }
  return "";
}

std::int64_t ApTerm::exponent_halves() const {
  if (!has_p) return 0;
  switch (form) {
    case Exponent::NONE: return 2;
    case Exponent::INTEGER: return 2 * exponent;
    case Exponent::HALF: return exponent;
  }
  return 0;
}

std::string ApTerm::to_string() const {
  std::string out;
  if (coeff) out = coeff->to_string();
  if (!has_p) return out;
  if (coeff) out += "*";
  out += "p";
  if (form == Exponent::INTEGER) out += "^" + std::to_string(exponent);
  if (form == Exponent::HALF) out += "^(" + std::to_string(exponent) + "/2)";
  return out;
}

bool ApExpression::uses_unit() const {
  return std::any_of(terms.begin(), terms.end(), [](const ApTerm& t) { return t.coeff && t.coeff->uses_unit(); });
}

ApValue ApExpression::evaluate() const {
  if (uses_unit()) return to_padic();
  const std::int64_t p = context->p();
  ExactQuadratic sum(context, 0);
  for (const ApTerm& t : terms) {
    ExactQuadratic value = ExactQuadratic::uniformizer_power(context, t.exponent_halves());
    if (t.coeff) {
      const auto [x, y] = exact_coeff(*t.coeff, p);
      value = ExactQuadratic(context, x, y) * value;
    }
    sum = t.negative ? sum - value : sum + value;
  }
  return sum;
}

PadicElement ApExpression::to_padic() const {
  std::optional<PadicElement> sum;
  for (const ApTerm& t : terms) {
    PadicElement value = PadicElement::uniformizer_power(context, t.exponent_halves());
    if (t.coeff) value = padic_coeff(*t.coeff, context) * value;
    if (t.negative) value = -value;
    sum = sum ? *sum + value : value;
  }
  return *sum;
}

Valuation ApExpression::slope() const {
  const ApValue value = evaluate();
  if (std::visit([](const auto& x) { return x.is_zero(); }, value)) throw ZeroAp("\"" + source + "\" is zero");
  return std::visit([](const auto& x) { return x.require_finite_valuation(); }, value);
}

std::string ApExpression::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].negative) {
      out += "-";
    } else if (i > 0) {
      out += "+";
    }
    out += terms[i].to_string();
  }
  return out;
}

std::vector<ApTerm> parse_ap_terms(std::string_view text) {
  if (text.empty()) throw ParseError("empty a_p expression at position 0");
  return Parser(text).expression();
}

ApExpression parse_ap(std::string_view text, std::int64_t p, int f, int precision) {
  ApExpression out;
  out.terms = parse_ap_terms(text);
  out.source = std::string(text);
  out.context = PadicContext::make(p, f, precision);
  const Valuation v = out.slope();
  if (v.twice() <= 0) throw NonPositiveSlope("\"" + out.source + "\" has slope " + v.to_string());
  return out;
}

ApMonomial parse_ap_monomial(std::string_view text) {
  const auto terms = parse_ap_terms(text);
  if (terms.size() != 1) throw ParseError("expected a single term in \"" + std::string(text) + "\"");
  const ApTerm& t = terms[0];
  ApMonomial out;
  out.exponent = Valuation::halves(t.exponent_halves());
  out.unit = 1;
  if (t.coeff) {
    if (t.coeff->kind != ApCoeff::Kind::INTEGER) {
      throw ParseError("expected an integer coefficient in \"" + std::string(text) + "\"");
    }
    out.unit = BigRational(t.coeff->value);
  }
  if (t.negative) out.unit = -out.unit;
  return out;
}

CliConfig parse_config(std::istream& in, CliConfig base) {
  CliConfig out = std::move(base);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "precision") {
      out.precision = parse_int(value, line);
    } else if (key == "residue_degree") {
      out.residue_degree = parse_int(value, line);
    } else if (key == "caveat_disk") {
      out.engine.caveat_disk = parse_int(value, line);
    } else if (key == "strict") {
      if (value != "true" && value != "false") {
        throw ParseError("line " + std::to_string(line) + ": strict must be true or false");
      }
      out.engine.strict = value == "true";
    } else if (key == "lag_exclusions") {
      out.engine.lag_exclusions.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.engine.lag_exclusions.push_back(parse_ap_monomial(item));
      }
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key \"" + key + "\"");
    }
  }
  return out;
}

}  // namespace zigzag
