#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entire/errors.hpp"
#include "entire/laurent.hpp"
#include "entire/number.hpp"

namespace entire {

// Concrete syntax for polynomials and systems:
//
//   system  := 'vars' n NEWLINE (index ':' expr NEWLINE){n}
//   expr    := [sign] term (sign term)*
//   term    := coeff ('*' factor)* | factor ('*' factor)*
//   coeff   := rational | '(' [sign] rational [sign rational 'i'] ')'
//   factor  := 'z' index ['^' [sign] digits]
//   rational:= digits ['/' digits]
//
// Whitespace is insignificant and '#' starts a comment running to the end of
// the line. Inside parentheses the imaginary unit may also be written bare
// ("(1+i)") or alone ("(2i)").

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars, std::size_t base_offset)
      : text_(text), nvars_(nvars), base_(base_offset) {}

  LaurentPoly parse() {
    LaurentPoly result(nvars_);
    skip();
    if (at_end()) fail("empty expression");
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = get() == '-';
      skip();
    }
    for (;;) {
      auto [e, c] = term();
      result.add_term(std::move(e), negate ? -c : c);
      skip();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-', found '") + op + "'");
      get();
      negate = op == '-';
      skip();
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, base_ + pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return text_[pos_++]; }

  void skip() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    std::string num = digits();
    skip();
    if (peek() != '/') return Rational(Integer(num));
    get();
    skip();
    std::size_t at = pos_;
    Integer den(digits());
    if (den == 0) {
      pos_ = at;
      fail("zero denominator");
    }
    return make_rational(Integer(num), den);
  }

  // Inside '(' ... ')'.
  GaussianRational gaussian() {
    GaussianRational value;
    bool seen_any = false;
    bool seen_real = false, seen_imaginary = false;
    for (;;) {
      skip();
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = get() == '-';
        skip();
      } else if (seen_any) {
        break;
      }
      Rational mag(1);
      bool have_digits = std::isdigit(static_cast<unsigned char>(peek())) != 0;
      if (have_digits) mag = rational();
      skip();
      bool imaginary = peek() == 'i';
      if (imaginary) get();
      if (!have_digits && !imaginary) fail("expected a rational or 'i'");
      if (seen_imaginary || (seen_real && !imaginary)) fail("expected the form (a+bi)");
      (imaginary ? seen_imaginary : seen_real) = true;
      if (negative) mag = -mag;
      value += imaginary ? GaussianRational(Rational(0), mag) : GaussianRational(mag);
      seen_any = true;
    }
    if (peek() != ')') fail("expected ')'");
    get();
    return value;
  }

  std::pair<Exponent, GaussianRational> term() {
    Exponent e = zero_exponent(nvars_);
    GaussianRational c(1);
    skip();
    if (peek() == '(') {
      get();
      c = gaussian();
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = rational();
    } else if (peek() == 'z') {
      factor(e);
    } else if (at_end()) {
      fail("expected a term");
    } else {
      fail(std::string("unexpected character '") + peek() + "'");
    }
    for (;;) {
      skip();
      if (peek() != '*') break;
      get();
      skip();
      factor(e);
    }
    return {std::move(e), c};
  }

  void factor(Exponent& e) {
    if (peek() != 'z') fail("expected a variable 'z<index>'");
    get();
    std::size_t at = pos_;
    Integer idx(digits());
    if (idx < 1 || idx > nvars_) {
      pos_ = at;
      fail("variable index " + idx.str() + " out of range 1.." + std::to_string(nvars_));
    }
    Integer power(1);
    skip();
    if (peek() == '^') {
      get();
      skip();
      bool paren = peek() == '(';
      if (paren) {
        get();
        skip();
      }
      bool negative = false;
      if (peek() == '-' || peek() == '+') {
        negative = get() == '-';
        skip();
      }
      power = Integer(digits());
      if (negative) power = -power;
      if (paren) {
        skip();
        if (peek() != ')') fail("expected ')'");
        get();
      }
    }
    e[idx.convert_to<std::size_t>() - 1] += power;
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline std::string monomial_text(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + e[i].str();
  }
  return s;
}

}  // namespace detail

/// Parses a Laurent polynomial in `nvars` variables.
inline LaurentPoly parse_laurent(std::string_view text, std::size_t nvars) {
  return detail::PolyParser(text, nvars, 0).parse();
}

/// Canonical text: terms by descending exponent, unit coefficients omitted,
/// non-real coefficients parenthesised. Reparses to the same polynomial.
inline std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = detail::monomial_text(e);
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      negative = c.re() < 0;
      Rational mag = negative ? Rational(-c.re()) : c.re();
      if (mag != 1 || mono.empty()) coeff = to_string(mag);
    } else {
      coeff = to_string(c);
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += "*";
    out += mono;
    first = false;
  }
  return out;
}

/// Parses a system file. Component lines may appear in any order but each
/// index 1..n exactly once.
inline OdeSystem parse_system(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<std::optional<LaurentPoly>> comps;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    std::size_t hash = line.find('#');
    std::string_view body = line.substr(0, hash);
    std::size_t first = body.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      std::size_t offset = line_start + first;
      std::string_view content = body.substr(first);
      if (!n) {
        if (content.substr(0, 4) != "vars") throw ParseError("expected header 'vars <n>'", offset);
        std::string_view rest = content.substr(4);
        std::size_t a = rest.find_first_not_of(" \t\r");
        std::size_t b = rest.find_last_not_of(" \t\r");
        if (a == std::string_view::npos) throw ParseError("missing variable count", offset + 4);
        std::string_view count = rest.substr(a, b - a + 1);
        for (char ch : count)
          if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("malformed variable count '" + std::string(count) + "'", offset + 4 + a);
        std::size_t value = std::stoul(std::string(count));
        if (value == 0) throw ParseError("variable count must be positive", offset + 4 + a);
        n = value;
        comps.assign(value, std::nullopt);
      } else {
        std::size_t colon = content.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected '<index>: <expr>'", offset);
        std::string_view idx_text = content.substr(0, colon);
        while (!idx_text.empty() && (idx_text.back() == ' ' || idx_text.back() == '\t')) idx_text.remove_suffix(1);
        if (idx_text.empty()) throw ParseError("missing component index", offset);
        for (char ch : idx_text)
          if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("malformed component index '" + std::string(idx_text) + "'", offset);
        std::size_t idx = std::stoul(std::string(idx_text));
        if (idx < 1 || idx > *n)
          throw ParseError("component index " + std::to_string(idx) + " out of range 1.." + std::to_string(*n),
                           offset);
        if (comps[idx - 1]) throw ParseError("duplicate definition of component " + std::to_string(idx), offset);
        comps[idx - 1] = detail::PolyParser(content.substr(colon + 1), *n, offset + colon + 1).parse();
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  if (!n) throw ParseError("missing header 'vars <n>'", 0);
  std::vector<LaurentPoly> rhs;
  for (std::size_t i = 0; i < *n; ++i) {
    if (!comps[i]) throw ParseError("missing component " + std::to_string(i + 1), text.size());
    rhs.push_back(std::move(*comps[i]));
  }
  return OdeSystem(std::move(rhs));
}

inline std::string format_system(const OdeSystem& sys) {
  std::string out = "vars " + std::to_string(sys.dimension()) + "\n";
  for (std::size_t i = 0; i < sys.dimension(); ++i)
    out += std::to_string(i + 1) + ": " + to_string(sys[i]) + "\n";
  return out;
}

}  // namespace entire
