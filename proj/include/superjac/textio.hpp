#pragma once

// Text grammar, canonical printing, file documents and JSON serialization.
//
// Polynomial grammar (whitespace insignificant):
//   poly    := ['-'] term (('+'|'-') term)*
//   term    := coeff ['*' factors] | factors
//   factors := factor ('*' factor)*
//   factor  := var ['^' nat]
//   var     := 'x' nat | 'xi' nat
//   coeff   := integer | integer '/' integer | '(' t-polynomial ')'
//
// Documents start with a header line "ring m=<M> n=<N> [field=<token>]".
// Map documents continue with one "var -> poly" line per generator.
// '#' starts a comment; blank lines are skipped.

#include "superjac/calculus.hpp"
#include "superjac/field.hpp"
#include "superjac/inversion.hpp"
#include "superjac/morphism.hpp"
#include "superjac/pointcheck.hpp"
#include "superjac/ring.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace superjac {

using Json = nlohmann::ordered_json;

namespace detail {

class TextCursor {
 public:
  TextCursor(std::string_view src, int line_base = 1, int col_base = 1)
      : src_(src), line_(line_base), col_(col_base) {}

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return eof() ? '\0' : src_[pos_]; }

  char get() {
    char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  std::string loc() const {
    return "line " + std::to_string(line_) + ", col " + std::to_string(col_);
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_parse(loc() + ": " + msg); }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

inline BigInt parse_digits(TextCursor& cur) {
  if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.fail("expected a number");
  BigInt v = 0;
  while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    v = v * 10 + (cur.get() - '0');
  }
  return v;
}

inline std::uint32_t parse_nat(TextCursor& cur, const char* what) {
  if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    cur.fail(std::string("expected ") + what);
  }
  BigInt v = parse_digits(cur);
  if (v > 1000000) cur.fail(std::string(what) + " too large");
  return static_cast<std::uint32_t>(v);
}

// t-polynomial body for extension coefficients, e.g. "2+t" or "1+2*t^3".
// Stops at the first character that cannot extend the expression.
inline Scalar parse_ext_body(TextCursor& cur, const FieldSpec& field) {
  std::uint64_t p = field.characteristic();
  std::vector<std::uint64_t> coeffs;
  auto slot = [&](std::size_t k) -> std::uint64_t& {
    if (coeffs.size() <= k) coeffs.resize(k + 1, 0);
    return coeffs[k];
  };
  bool first = true;
  for (;;) {
    cur.skip_ws();
    bool neg = false;
    if (cur.peek() == '+' || cur.peek() == '-') {
      neg = cur.get() == '-';
    } else if (!first) {
      break;
    }
    cur.skip_ws();
    std::uint64_t value = 1;
    bool have_value = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      BigInt v = parse_digits(cur) % p;
      value = static_cast<std::uint64_t>(v);
      have_value = true;
      cur.skip_ws();
      if (cur.peek() == '*') {
        cur.get();
        cur.skip_ws();
      } else if (cur.peek() == 't') {
        cur.fail("expected '*' before t");
      } else {
        std::uint64_t add = neg ? (p - value) % p : value;
        slot(0) = (slot(0) + add) % p;
        first = false;
        continue;
      }
    }
    if (cur.peek() != 't') {
      if (have_value) cur.fail("expected t");
      cur.fail("expected a coefficient term");
    }
    cur.get();
    std::size_t power = 1;
    cur.skip_ws();
    if (cur.peek() == '^') {
      cur.get();
      cur.skip_ws();
      power = parse_nat(cur, "exponent");
    }
    std::uint64_t add = neg ? (p - value % p) % p : value % p;
    slot(power) = (slot(power) + add) % p;
    first = false;
  }
  return Scalar::from_coefficients(field, std::move(coeffs));
}

inline Scalar parse_coeff(TextCursor& cur, const FieldSpec& field) {
  cur.skip_ws();
  if (cur.peek() == '(') {
    if (field.kind() != FieldSpec::Kind::extension) {
      cur.fail("coefficient not in field: extension element over " + field.token());
    }
    cur.get();
    Scalar s = parse_ext_body(cur, field);
    cur.skip_ws();
    if (cur.peek() != ')') cur.fail("expected ')'");
    cur.get();
    return s;
  }
  bool neg = false;
  if (cur.peek() == '-') {
    cur.get();
    cur.skip_ws();
    neg = true;
  }
  if (field.kind() == FieldSpec::Kind::extension && cur.peek() == 't') {
    Scalar s = parse_ext_body(cur, field);
    return neg ? -s : s;
  }
  BigInt num = parse_digits(cur);
  cur.skip_ws();
  if (cur.peek() == '/') {
    cur.get();
    cur.skip_ws();
    BigInt den = parse_digits(cur);
    if (den == 0) cur.fail("zero denominator");
    try {
      Scalar s = Scalar::from_fraction(field, num, den);
      return neg ? -s : s;
    } catch (const Error&) {
      cur.fail("denominator is not invertible in " + field.token());
    }
  }
  Scalar s = Scalar::from_bigint(field, num);
  return neg ? -s : s;
}

// Standalone scalar literal, as used by --at points and JSON coefficients.
inline Scalar parse_scalar_text(const FieldSpec& field, const std::string& text) {
  TextCursor cur(text);
  cur.skip_ws();
  Scalar s = [&] {
    if (field.kind() == FieldSpec::Kind::extension && cur.peek() != '(') {
      bool neg = false;
      if (cur.peek() == '-') {
        cur.get();
        cur.skip_ws();
        neg = true;
      }
      Scalar v = parse_ext_body(cur, field);
      return neg ? -v : v;
    }
    return parse_coeff(cur, field);
  }();
  cur.skip_ws();
  if (!cur.eof()) cur.fail("unexpected trailing text in scalar");
  return s;
}

class PolyParser {
 public:
  // Owns a copy of the source so callers may pass temporaries.
  PolyParser(std::string src, const RingContext& ctx, int line_base = 1, int col_base = 1)
      : src_(std::move(src)), cur_(src_, line_base, col_base), ctx_(ctx) {}

  SuperPolynomial parse_all() {
    cur_.skip_ws();
    if (cur_.eof()) cur_.fail("empty polynomial");
    SuperPolynomial p = parse_expr();
    cur_.skip_ws();
    if (!cur_.eof()) cur_.fail("unexpected character");
    return p;
  }

 private:
  // Net sign of a run of '+'/'-' characters; tolerates "x + -2" style input.
  int read_sign_run() {
    int sign = 1;
    for (;;) {
      cur_.skip_ws();
      char c = cur_.peek();
      if (c == '-') {
        cur_.get();
        sign = -sign;
      } else if (c == '+') {
        cur_.get();
      } else {
        break;
      }
    }
    return sign;
  }

  SuperPolynomial parse_expr() {
    int sign = read_sign_run();
    SuperPolynomial acc = parse_term();
    if (sign < 0) acc = -acc;
    for (;;) {
      cur_.skip_ws();
      char c = cur_.peek();
      if (c != '+' && c != '-') break;
      int s = read_sign_run();
      SuperPolynomial t = parse_term();
      acc = s < 0 ? acc - t : acc + t;
    }
    return acc;
  }

  SuperPolynomial parse_term() { return parse_factors(); }

  SuperPolynomial parse_factors() {
    SuperPolynomial acc = parse_factor();
    for (;;) {
      cur_.skip_ws();
      if (cur_.peek() != '*') break;
      cur_.get();
      acc = acc * parse_factor();
    }
    return acc;
  }

  SuperPolynomial parse_factor() {
    cur_.skip_ws();
    std::string at = cur_.loc();
    char head = cur_.peek();
    // Scalar factors: "3", "1/2", "(2+t)". Any position within the term.
    if (std::isdigit(static_cast<unsigned char>(head)) || head == '(') {
      return SuperPolynomial::constant(ctx_, parse_coeff(cur_, ctx_.field));
    }
    if (head != 'x') cur_.fail("expected a variable or coefficient");
    cur_.get();
    bool odd = cur_.peek() == 'i';
    if (odd) cur_.get();
    std::uint32_t idx = parse_nat(cur_, "variable index");
    SuperPolynomial base = SuperPolynomial::zero(ctx_);
    std::uint32_t exp = 1;
    cur_.skip_ws();
    if (cur_.peek() == '^') {
      cur_.get();
      cur_.skip_ws();
      exp = parse_nat(cur_, "exponent");
    }
    if (odd) {
      if (idx < 1 || idx > ctx_.odd_vars) {
        fail_parse(at + ": odd variable index out of range (n=" + std::to_string(ctx_.odd_vars) + ")");
      }
      if (exp == 0) return SuperPolynomial::constant(ctx_, 1);
      if (exp > 1) return SuperPolynomial::zero(ctx_);  // repeated odd factor
      return SuperPolynomial::odd_variable(ctx_, idx);
    }
    if (idx < 1 || idx > ctx_.even_vars) {
      fail_parse(at + ": even variable index out of range (m=" + std::to_string(ctx_.even_vars) + ")");
    }
    SuperMonomial mono = SuperPolynomial::unit_monomial(ctx_);
    mono.exponents[idx - 1] = exp;
    base = SuperPolynomial::monomial(ctx_, mono, Scalar::one(ctx_.field));
    return base;
  }

  std::string src_;
  TextCursor cur_;
  const RingContext& ctx_;
};

}  // namespace detail

inline SuperPolynomial parse_poly(const std::string& text, const RingContext& ctx) {
  detail::PolyParser parser(text, ctx);
  return parser.parse_all();
}

// Single field element: "5", "-3/4", "t", "2+t", "t^2". Used wherever point
// coordinates or standalone coefficients appear.
inline Scalar parse_scalar_text(const FieldSpec& field, const std::string& text) {
  return detail::parse_scalar_text(field, text);
}

// Canonical text form; parse_poly(print_poly(p)) == p and printing is stable
// under reparsing. Over Q negative coefficients print with a binary minus;
// finite-field coefficients are canonical residues, so no minus appears.
inline std::string print_poly(const SuperPolynomial& p) {
  if (p.is_zero()) return "0";
  const FieldSpec& field = p.context().field;
  bool rationals = field.kind() == FieldSpec::Kind::rationals;
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Scalar mag = c;
    bool neg = false;
    if (rationals && c.rational() < 0) {
      neg = true;
      mag = -c;
    }
    std::string factors;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      if (m.exponents[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(i + 1);
      if (m.exponents[i] > 1) factors += "^" + std::to_string(m.exponents[i]);
    }
    for (std::size_t k = 0; k < kMaxOddVars; ++k) {
      if (!(m.odd >> k & 1)) continue;
      if (!factors.empty()) factors += "*";
      factors += "xi" + std::to_string(k + 1);
    }
    std::string coeff_text;
    if (factors.empty()) {
      coeff_text = mag.needs_parens() ? "(" + mag.str() + ")" : mag.str();
    } else if (!mag.is_one()) {
      coeff_text = (mag.needs_parens() ? "(" + mag.str() + ")" : mag.str()) + "*";
    }
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    out += coeff_text + factors;
  }
  return out;
}

struct RingHeader {
  std::size_t even_vars = 0;
  std::size_t odd_vars = 0;
  std::optional<FieldSpec> field;
};

namespace detail {

inline RingHeader parse_ring_header(const std::string& line, int lineno) {
  std::istringstream is(line);
  std::string word;
  if (!(is >> word) || word != "ring") {
    fail_parse("line " + std::to_string(lineno) + ": expected header 'ring m=<M> n=<N> [field=<token>]'");
  }
  RingHeader h;
  bool saw_m = false, saw_n = false;
  while (is >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos) {
      fail_parse("line " + std::to_string(lineno) + ": bad header item '" + word + "'");
    }
    std::string key = word.substr(0, eq), value = word.substr(eq + 1);
    auto to_count = [&](const std::string& v) -> std::size_t {
      if (v.empty()) fail_parse("line " + std::to_string(lineno) + ": empty value for " + key);
      std::size_t res = 0;
      for (char ch : v) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
          fail_parse("line " + std::to_string(lineno) + ": bad value for " + key);
        }
        res = res * 10 + static_cast<std::size_t>(ch - '0');
        if (res > 1000000) fail_parse("line " + std::to_string(lineno) + ": value too large for " + key);
      }
      return res;
    };
    if (key == "m") {
      h.even_vars = to_count(value);
      saw_m = true;
    } else if (key == "n") {
      h.odd_vars = to_count(value);
      saw_n = true;
    } else if (key == "field") {
      h.field = FieldSpec::from_token(value);
    } else {
      fail_parse("line " + std::to_string(lineno) + ": unknown header key '" + key + "'");
    }
  }
  if (!saw_m || !saw_n) {
    fail_parse("line " + std::to_string(lineno) + ": header must set m and n");
  }
  return h;
}

struct DocLine {
  int number;
  std::string text;
};

// Comment stripping plus blank-line removal, keeping original line numbers.
inline std::vector<DocLine> document_lines(const std::string& text) {
  std::vector<DocLine> lines;
  int number = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (!blank) lines.push_back({number, line});
    if (nl == std::string::npos) break;
    pos = nl + 1;
    ++number;
  }
  return lines;
}

inline RingContext header_context(const RingHeader& h, const std::optional<FieldSpec>& fallback) {
  if (h.field) return RingContext(h.even_vars, h.odd_vars, *h.field);
  if (fallback) return RingContext(h.even_vars, h.odd_vars, *fallback);
  fail_parse("no field in the document header and no fallback field given");
}

}  // namespace detail

// Polynomial document: header line, then one expression (may span lines).
inline SuperPolynomial parse_poly_document(const std::string& text,
                                           const std::optional<FieldSpec>& fallback = std::nullopt) {
  auto lines = detail::document_lines(text);
  if (lines.empty()) fail_parse("empty document");
  RingContext ctx = detail::header_context(detail::parse_ring_header(lines[0].text, lines[0].number), fallback);
  std::string body;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (i > 1) {
      for (int gap = lines[i - 1].number; gap < lines[i].number; ++gap) body += "\n";
    }
    body += lines[i].text;
  }
  if (body.empty()) fail_parse("document has no polynomial after the header");
  detail::PolyParser parser(body, ctx, lines.size() > 1 ? lines[1].number : 2, 1);
  return parser.parse_all();
}

inline std::string print_ring_header(const RingContext& ctx) {
  return "ring m=" + std::to_string(ctx.even_vars) + " n=" + std::to_string(ctx.odd_vars) +
         " field=" + ctx.field.token();
}

inline std::string print_poly_document(const SuperPolynomial& p) {
  return print_ring_header(p.context()) + "\n" + print_poly(p) + "\n";
}

// Map document: header, then "var -> poly" with each generator exactly once.
inline SuperEndomorphism parse_map_document(const std::string& text,
                                            const std::optional<FieldSpec>& fallback = std::nullopt) {
  auto lines = detail::document_lines(text);
  if (lines.empty()) fail_parse("empty document");
  RingContext ctx = detail::header_context(detail::parse_ring_header(lines[0].text, lines[0].number), fallback);
  std::vector<std::optional<SuperPolynomial>> even(ctx.even_vars), odd(ctx.odd_vars);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& [number, raw] = lines[li];
    auto arrow = raw.find("->");
    if (arrow == std::string::npos) {
      fail_parse("line " + std::to_string(number) + ": expected 'var -> polynomial'");
    }
    std::string lhs = raw.substr(0, arrow);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
    std::size_t start = 0;
    while (start < lhs.size() && std::isspace(static_cast<unsigned char>(lhs[start]))) ++start;
    lhs = lhs.substr(start);
    bool is_odd = false;
    std::size_t digits = 0;
    if (lhs.size() >= 2 && lhs[0] == 'x') {
      digits = 1;
      if (lhs[1] == 'i') {
        is_odd = true;
        digits = 2;
      }
    }
    std::size_t idx = 0;
    bool good = digits > 0 && digits < lhs.size();
    for (std::size_t i = digits; i < lhs.size() && good; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(lhs[i]))) good = false;
      idx = idx * 10 + static_cast<std::size_t>(lhs[i] - '0');
    }
    if (!good || idx == 0) {
      fail_parse("line " + std::to_string(number) + ": bad generator name '" + lhs + "'");
    }
    auto& slot = is_odd ? odd : even;
    std::size_t count = is_odd ? ctx.odd_vars : ctx.even_vars;
    if (idx > count) {
      fail_parse("line " + std::to_string(number) + ": generator '" + lhs + "' outside the ring");
    }
    if (slot[idx - 1].has_value()) {
      fail_parse("line " + std::to_string(number) + ": duplicate image for '" + lhs + "'");
    }
    detail::PolyParser parser(raw.substr(arrow + 2), ctx, number,
                              static_cast<int>(arrow) + 3);
    SuperPolynomial img = parser.parse_all();
    Parity par = img.parity();
    bool bad_parity = is_odd ? (par == Parity::even || par == Parity::mixed)
                             : (par == Parity::odd || par == Parity::mixed);
    if (bad_parity) {
      fail_precondition("image for '" + lhs + "' has the wrong parity (line " +
                        std::to_string(number) + ")");
    }
    slot[idx - 1] = std::move(img);
  }
  std::vector<SuperPolynomial> fx, fxi;
  for (std::size_t i = 0; i < ctx.even_vars; ++i) {
    if (!even[i]) fail_parse("missing image for 'x" + std::to_string(i + 1) + "'");
    fx.push_back(std::move(*even[i]));
  }
  for (std::size_t k = 0; k < ctx.odd_vars; ++k) {
    if (!odd[k]) fail_parse("missing image for 'xi" + std::to_string(k + 1) + "'");
    fxi.push_back(std::move(*odd[k]));
  }
  return SuperEndomorphism(ctx, std::move(fx), std::move(fxi));
}

inline std::string print_map_document(const SuperEndomorphism& phi) {
  const RingContext& ctx = phi.context();
  std::string out = print_ring_header(ctx) + "\n";
  for (std::size_t i = 1; i <= ctx.even_vars; ++i) {
    out += "x" + std::to_string(i) + " -> " + print_poly(phi.even_image(i)) + "\n";
  }
  for (std::size_t k = 1; k <= ctx.odd_vars; ++k) {
    out += "xi" + std::to_string(k) + " -> " + print_poly(phi.odd_image(k)) + "\n";
  }
  return out;
}

// JSON serialization. Keys keep insertion order, coefficients are strings, so
// serialized bytes are deterministic.

namespace detail {

inline Json terms_to_json(const SuperPolynomial& p) {
  Json arr = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json term;
    term["e"] = m.exponents;
    Json odd = Json::array();
    for (std::size_t k = 0; k < kMaxOddVars; ++k) {
      if (m.odd >> k & 1) odd.push_back(k + 1);
    }
    term["o"] = std::move(odd);
    term["c"] = c.str();
    arr.push_back(std::move(term));
  }
  return arr;
}

inline SuperPolynomial terms_from_json(const Json& arr, const RingContext& ctx) {
  if (!arr.is_array()) fail_parse("terms must be an array");
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  for (const auto& term : arr) {
    if (!term.is_object() || !term.contains("e") || !term.contains("o") || !term.contains("c")) {
      fail_parse("term must have keys e, o, c");
    }
    SuperMonomial m;
    if (!term["e"].is_array() || term["e"].size() != ctx.even_vars) {
      fail_parse("term exponent list must have length m");
    }
    for (const auto& e : term["e"]) {
      if (!e.is_number_unsigned()) fail_parse("exponents must be nonnegative integers");
      m.exponents.push_back(e.get<std::uint32_t>());
    }
    if (!term["o"].is_array()) fail_parse("odd index list must be an array");
    std::size_t prev = 0;
    for (const auto& o : term["o"]) {
      if (!o.is_number_unsigned()) fail_parse("odd indices must be positive integers");
      std::size_t k = o.get<std::size_t>();
      if (k < 1 || k > ctx.odd_vars) fail_parse("odd index out of range");
      if (k <= prev) fail_parse("odd indices must be strictly ascending");
      prev = k;
      m.odd |= OddSet{1} << (k - 1);
    }
    if (!term["c"].is_string()) fail_parse("coefficient must be a string");
    Scalar c = detail::parse_scalar_text(ctx.field, term["c"].get<std::string>());
    if (c.is_zero()) fail_parse("zero coefficient in serialized polynomial");
    for (const auto& [pm, pc] : terms) {
      if (pm == m) fail_parse("duplicate monomial in serialized polynomial");
    }
    terms.emplace_back(std::move(m), std::move(c));
  }
  return SuperPolynomial::from_terms(ctx, terms);
}

inline RingContext context_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("field")) {
    fail_parse("document must have keys m, n, field");
  }
  if (!j["m"].is_number_unsigned() || !j["n"].is_number_unsigned() || !j["field"].is_string()) {
    fail_parse("bad types for m, n or field");
  }
  return RingContext(j["m"].get<std::size_t>(), j["n"].get<std::size_t>(),
                     FieldSpec::from_token(j["field"].get<std::string>()));
}

}  // namespace detail

inline Json poly_to_json(const SuperPolynomial& p) {
  Json j;
  j["m"] = p.context().even_vars;
  j["n"] = p.context().odd_vars;
  j["field"] = p.context().field.token();
  j["terms"] = detail::terms_to_json(p);
  return j;
}

inline SuperPolynomial poly_from_json(const Json& j) {
  RingContext ctx = detail::context_from_json(j);
  if (!j.contains("terms")) fail_parse("document must have a terms array");
  return detail::terms_from_json(j["terms"], ctx);
}

inline Json map_to_json(const SuperEndomorphism& phi) {
  Json j;
  j["m"] = phi.context().even_vars;
  j["n"] = phi.context().odd_vars;
  j["field"] = phi.context().field.token();
  Json x = Json::array(), xi = Json::array();
  for (const auto& f : phi.even_images()) x.push_back(detail::terms_to_json(f));
  for (const auto& q : phi.odd_images()) xi.push_back(detail::terms_to_json(q));
  j["x"] = std::move(x);
  j["xi"] = std::move(xi);
  return j;
}

inline SuperEndomorphism map_from_json(const Json& j) {
  RingContext ctx = detail::context_from_json(j);
  if (!j.contains("x") || !j.contains("xi") || !j["x"].is_array() || !j["xi"].is_array()) {
    fail_parse("map document must have arrays x and xi");
  }
  if (j["x"].size() != ctx.even_vars || j["xi"].size() != ctx.odd_vars) {
    fail_parse("map image counts do not match m and n");
  }
  std::vector<SuperPolynomial> fx, fxi;
  for (const auto& t : j["x"]) fx.push_back(detail::terms_from_json(t, ctx));
  for (const auto& t : j["xi"]) fxi.push_back(detail::terms_from_json(t, ctx));
  return SuperEndomorphism(ctx, std::move(fx), std::move(fxi));
}

inline Json point_to_json(const PointTuple& b) {
  Json arr = Json::array();
  for (const auto& c : b) arr.push_back(c.str());
  return arr;
}

inline Json sj_to_json(const SJVerdict& v) {
  Json j;
  j["pass"] = v.pass;
  j["evenOk"] = v.even_ok;
  j["oddOk"] = v.odd_ok;
  j["evenDet"] = print_poly(v.even_det);
  j["oddDet"] = print_poly(v.odd_det);
  j["evenDetModJ"] = print_poly(v.even_det_mod_j);
  j["oddDetModJ"] = print_poly(v.odd_det_mod_j);
  return j;
}

inline Json inversion_to_json(const InversionResult& result) {
  Json j;
  if (const auto* aut = std::get_if<Automorphism>(&result)) {
    j["status"] = "automorphism";
    j["inverse"] = map_to_json(aut->inverse);
    Json cert;
    cert["evenInverseDegree"] = aut->certificate.even_inverse_degree;
    cert["unipotentIterations"] = aut->certificate.unipotent_iterations;
    cert["verifiedBothSides"] = aut->certificate.verified_both_sides;
    j["certificate"] = std::move(cert);
  } else if (const auto* rej = std::get_if<NotAutomorphism>(&result)) {
    j["status"] = "notAutomorphism";
    j["reason"] = rejection_reason_name(rej->reason);
    if (rej->witness) {
      Json w;
      w["first"] = point_to_json(rej->witness->first);
      w["second"] = point_to_json(rej->witness->second);
      j["witness"] = std::move(w);
    }
  } else {
    j["status"] = "inconclusive";
    j["degreeBoundTried"] = std::get<Inconclusive>(result).degree_bound_tried;
  }
  return j;
}

inline Json exhaustive_to_json(const ExhaustiveResult& result) {
  Json j;
  if (std::holds_alternative<Bijective>(result)) {
    j["verdict"] = "bijective";
  } else if (const auto* col = std::get_if<PointCollision>(&result)) {
    j["verdict"] = "collision";
    j["first"] = point_to_json(col->first);
    j["second"] = point_to_json(col->second);
  } else {
    j["verdict"] = "notSurjective";
    j["missing"] = point_to_json(std::get<NotSurjective>(result).missing);
  }
  return j;
}

inline Json sample_to_json(const SampleResult& result) {
  Json j;
  if (const auto* none = std::get_if<NoCollisionFound>(&result)) {
    j["verdict"] = "noCollisionFound";
    j["trials"] = none->trials_run;
  } else {
    const auto& col = std::get<PointCollision>(result);
    j["verdict"] = "collision";
    j["first"] = point_to_json(col.first);
    j["second"] = point_to_json(col.second);
  }
  return j;
}

inline Json upsilon_report_to_json(const UpsilonPowerReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["power"] = r.power;
  j["characteristic"] = r.characteristic;
  return j;
}

}  // namespace superjac
