#pragma once

// Exact scalar arithmetic over Q, F_p (p an odd prime) and F_{p^k}.
// Characteristic 2 is rejected everywhere: the sign rule needs 2 invertible.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superjac {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind { parse, precondition, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorKind::parse, msg); }
[[noreturn]] inline void fail_precondition(const std::string& msg) { throw Error(ErrorKind::precondition, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Multiplicative inverse mod p via extended Euclid. a must be nonzero mod p.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) fail_precondition("division by zero");
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail_precondition("element not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Dense coefficient vectors over F_p, low degree first. Trailing zeros allowed.
using FpPoly = std::vector<std::uint64_t>;

inline int fp_degree(const FpPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
  }
  return r;
}

// Remainder of a modulo monic m.
inline FpPoly fp_rem(FpPoly a, const FpPoly& m, std::uint64_t p) {
  int dm = fp_degree(m);
  for (int da = fp_degree(a); da >= dm; da = fp_degree(a)) {
    std::uint64_t c = a[static_cast<std::size_t>(da)];
    int shift = da - dm;
    for (int i = 0; i <= dm; ++i) {
      std::size_t idx = static_cast<std::size_t>(i + shift);
      a[idx] = submod(a[idx], mulmod(c, m[static_cast<std::size_t>(i)], p), p);
    }
  }
  a.resize(static_cast<std::size_t>(dm > 0 ? dm : 1), 0);
  return a;
}

// Extended Euclid in F_p[t]: returns u with u*a = gcd (mod m), normalized monic gcd.
inline std::pair<FpPoly, FpPoly> fp_ext_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  FpPoly u0{1}, u1{};
  while (fp_degree(b) >= 0) {
    // divide a by b
    FpPoly q(static_cast<std::size_t>(std::max(fp_degree(a) - fp_degree(b) + 1, 1)), 0);
    FpPoly r = a;
    int db = fp_degree(b);
    std::uint64_t lead_inv = invmod(b[static_cast<std::size_t>(db)], p);
    for (int dr = fp_degree(r); dr >= db; dr = fp_degree(r)) {
      std::uint64_t c = mulmod(r[static_cast<std::size_t>(dr)], lead_inv, p);
      int shift = dr - db;
      q[static_cast<std::size_t>(shift)] = c;
      for (int i = 0; i <= db; ++i) {
        std::size_t idx = static_cast<std::size_t>(i + shift);
        r[idx] = submod(r[idx], mulmod(c, b[static_cast<std::size_t>(i)], p), p);
      }
    }
    FpPoly qu1 = fp_mul(q, u1, p);
    FpPoly u2 = u0;
    if (u2.size() < qu1.size()) u2.resize(qu1.size(), 0);
    for (std::size_t i = 0; i < qu1.size(); ++i) u2[i] = submod(u2[i], qu1[i], p);
    u0 = std::move(u1);
    u1 = std::move(u2);
    a = std::move(b);
    b = std::move(r);
  }
  return {u0, a};
}

// Deterministic irreducibility test by trial division with all monic divisors
// of degree up to deg/2. Desk scale only; guarded by an enumeration cap.
inline bool fp_is_irreducible(const FpPoly& m, std::uint64_t p) {
  int d = fp_degree(m);
  if (d < 2) return false;
  for (int e = 1; 2 * e <= d; ++e) {
    double count = 1;
    for (int i = 0; i < e; ++i) count *= static_cast<double>(p);
    if (count > 4.0e6) {
      fail_precondition("extension modulus too large to validate");
    }
    std::uint64_t total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    FpPoly div(static_cast<std::size_t>(e) + 1, 0);
    div[static_cast<std::size_t>(e)] = 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t v = idx;
      for (int i = 0; i < e; ++i) {
        div[static_cast<std::size_t>(i)] = v % p;
        v /= p;
      }
      if (fp_degree(fp_rem(m, div, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace detail

// Ground field description. Factories validate; instances are always well formed.
class FieldSpec {
 public:
  enum class Kind { rationals, prime, extension };

  FieldSpec() : kind_(Kind::rationals) {}

  static FieldSpec rationals() { return FieldSpec(); }

  static FieldSpec prime(std::uint64_t p) {
    check_char(p);
    FieldSpec fs;
    fs.kind_ = Kind::prime;
    fs.p_ = p;
    return fs;
  }

  // modulus: monic coefficients low degree first, length = degree + 1, degree >= 2.
  static FieldSpec extension(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    check_char(p);
    for (auto& c : modulus) c %= p;
    int d = detail::fp_degree(modulus);
    if (d < 2) fail_precondition("extension modulus must have degree at least 2");
    if (static_cast<int>(modulus.size()) != d + 1) modulus.resize(static_cast<std::size_t>(d) + 1);
    if (modulus.back() != 1) fail_precondition("extension modulus must be monic");
    if (!detail::fp_is_irreducible(modulus, p)) {
      fail_precondition("extension modulus is reducible");
    }
    FieldSpec fs;
    fs.kind_ = Kind::extension;
    fs.p_ = p;
    fs.modulus_ = std::move(modulus);
    return fs;
  }

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return kind_ == Kind::rationals ? 0 : p_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  unsigned extension_degree() const {
    return kind_ == Kind::extension ? static_cast<unsigned>(modulus_.size() - 1) : 1u;
  }

  bool is_finite() const { return kind_ != Kind::rationals; }

  // Number of elements; finite fields only, guarded against overflow.
  std::uint64_t element_count() const {
    if (!is_finite()) fail_precondition("field is infinite");
    std::uint64_t n = 1;
    for (unsigned i = 0; i < extension_degree(); ++i) {
      if (n > (std::uint64_t{1} << 62) / p_) fail_precondition("field too large to enumerate");
      n *= p_;
    }
    return n;
  }

  // Token forms: "Q", "Fp:<p>", "Fq:<p>:<c0,c1,...,ck>".
  std::string token() const {
    switch (kind_) {
      case Kind::rationals:
        return "Q";
      case Kind::prime:
        return "Fp:" + std::to_string(p_);
      case Kind::extension: {
        std::string s = "Fq:" + std::to_string(p_) + ":";
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(modulus_[i]);
        }
        return s;
      }
    }
    fail_internal("bad field kind");
  }

  static FieldSpec from_token(const std::string& tok) {
    if (tok == "Q") return rationals();
    auto parse_u64 = [&](const std::string& s) -> std::uint64_t {
      if (s.empty()) fail_parse("bad field token '" + tok + "'");
      std::uint64_t v = 0;
      for (char c : s) {
        if (c < '0' || c > '9') fail_parse("bad field token '" + tok + "'");
        if (v > (UINT64_MAX - 9) / 10) fail_parse("number too large in field token");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return v;
    };
    if (tok.rfind("Fp:", 0) == 0) return prime(parse_u64(tok.substr(3)));
    if (tok.rfind("Fq:", 0) == 0) {
      std::string rest = tok.substr(3);
      auto colon = rest.find(':');
      if (colon == std::string::npos) fail_parse("bad field token '" + tok + "'");
      std::uint64_t p = parse_u64(rest.substr(0, colon));
      std::vector<std::uint64_t> coeffs;
      std::string list = rest.substr(colon + 1);
      std::size_t pos = 0;
      while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        coeffs.push_back(parse_u64(list.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == list.size()) break;
      }
      return extension(p, std::move(coeffs));
    }
    fail_parse("unknown field token '" + tok + "'");
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

 private:
  static void check_char(std::uint64_t p) {
    if (p == 2) fail_precondition("characteristic 2 is not supported");
    if (!detail::is_prime_u64(p)) {
      fail_precondition("field characteristic " + std::to_string(p) + " is not prime");
    }
  }

  Kind kind_;
  std::uint64_t p_ = 0;
  std::vector<std::uint64_t> modulus_;  // extension only
};

// One field element. Representation is canonical at all times: rationals are
// reduced with positive denominator, residues lie in [0, p), extension
// coefficient vectors have length = extension degree with entries in [0, p).
class Scalar {
 public:
  Scalar() : spec_(FieldSpec::rationals()), rat_(0) {}

  static Scalar zero(const FieldSpec& fs) { return from_integer(fs, 0); }
  static Scalar one(const FieldSpec& fs) { return from_integer(fs, 1); }

  static Scalar from_integer(const FieldSpec& fs, long long v) { return from_bigint(fs, BigInt(v)); }

  static Scalar from_bigint(const FieldSpec& fs, const BigInt& v) {
    Scalar s(fs);
    switch (fs.kind()) {
      case FieldSpec::Kind::rationals:
        s.rat_ = Rational(v);
        break;
      case FieldSpec::Kind::prime:
        s.res_ = reduce_bigint(v, fs.characteristic());
        break;
      case FieldSpec::Kind::extension:
        s.ext_.assign(fs.extension_degree(), 0);
        s.ext_[0] = reduce_bigint(v, fs.characteristic());
        break;
    }
    return s;
  }

  // num/den in the given field; den must be invertible there.
  static Scalar from_fraction(const FieldSpec& fs, const BigInt& num, const BigInt& den) {
    if (den == 0) fail_precondition("division by zero");
    if (fs.kind() == FieldSpec::Kind::rationals) {
      Scalar s(fs);
      s.rat_ = Rational(num, den);
      return s;
    }
    return from_bigint(fs, num) / from_bigint(fs, den);
  }

  static Scalar from_rational(const FieldSpec& fs, Rational v) {
    if (fs.kind() != FieldSpec::Kind::rationals) {
      return from_fraction(fs, boost::multiprecision::numerator(v), boost::multiprecision::denominator(v));
    }
    Scalar s(fs);
    s.rat_ = std::move(v);
    return s;
  }

  static Scalar from_residue(const FieldSpec& fs, std::uint64_t r) {
    if (fs.kind() != FieldSpec::Kind::prime) fail_precondition("residue form needs a prime field");
    Scalar s(fs);
    s.res_ = r % fs.characteristic();
    return s;
  }

  // Coefficients of the t-polynomial representative, low degree first.
  static Scalar from_coefficients(const FieldSpec& fs, std::vector<std::uint64_t> coeffs) {
    if (fs.kind() != FieldSpec::Kind::extension) fail_precondition("coefficient form needs an extension field");
    std::uint64_t p = fs.characteristic();
    for (auto& c : coeffs) c %= p;
    if (detail::fp_degree(coeffs) >= static_cast<int>(fs.extension_degree())) {
      coeffs = detail::fp_rem(std::move(coeffs), fs.modulus(), p);
    }
    coeffs.resize(fs.extension_degree(), 0);
    Scalar s(fs);
    s.ext_ = std::move(coeffs);
    return s;
  }

  // Enumeration of finite fields: index i maps to the base-p digit vector of i.
  static Scalar from_index(const FieldSpec& fs, std::uint64_t idx) {
    switch (fs.kind()) {
      case FieldSpec::Kind::prime:
        return from_residue(fs, idx % fs.characteristic());
      case FieldSpec::Kind::extension: {
        std::uint64_t p = fs.characteristic();
        std::vector<std::uint64_t> c(fs.extension_degree(), 0);
        for (auto& digit : c) {
          digit = idx % p;
          idx /= p;
        }
        return from_coefficients(fs, std::move(c));
      }
      case FieldSpec::Kind::rationals:
        fail_precondition("cannot enumerate an infinite field");
    }
    fail_internal("bad field kind");
  }

  std::uint64_t index() const {
    switch (spec_.kind()) {
      case FieldSpec::Kind::prime:
        return res_;
      case FieldSpec::Kind::extension: {
        std::uint64_t p = spec_.characteristic();
        std::uint64_t idx = 0;
        for (std::size_t i = ext_.size(); i-- > 0;) idx = idx * p + ext_[i];
        return idx;
      }
      case FieldSpec::Kind::rationals:
        fail_precondition("rationals have no enumeration index");
    }
    fail_internal("bad field kind");
  }

  const FieldSpec& field() const { return spec_; }
  const Rational& rational() const { return rat_; }
  std::uint64_t residue() const { return res_; }
  const std::vector<std::uint64_t>& coefficients() const { return ext_; }

  bool is_zero() const {
    switch (spec_.kind()) {
      case FieldSpec::Kind::rationals:
        return rat_ == 0;
      case FieldSpec::Kind::prime:
        return res_ == 0;
      case FieldSpec::Kind::extension:
        return detail::fp_degree(ext_) < 0;
    }
    fail_internal("bad field kind");
  }

  bool is_one() const { return *this == one(spec_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r(a.spec_);
    switch (a.spec_.kind()) {
      case FieldSpec::Kind::rationals:
        r.rat_ = a.rat_ + b.rat_;
        break;
      case FieldSpec::Kind::prime:
        r.res_ = detail::addmod(a.res_, b.res_, a.p());
        break;
      case FieldSpec::Kind::extension:
        r.ext_ = a.ext_;
        for (std::size_t i = 0; i < r.ext_.size(); ++i) {
          r.ext_[i] = detail::addmod(r.ext_[i], b.ext_[i], a.p());
        }
        break;
    }
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  Scalar operator-() const {
    Scalar r(spec_);
    switch (spec_.kind()) {
      case FieldSpec::Kind::rationals:
        r.rat_ = -rat_;
        break;
      case FieldSpec::Kind::prime:
        r.res_ = res_ == 0 ? 0 : p() - res_;
        break;
      case FieldSpec::Kind::extension:
        r.ext_ = ext_;
        for (auto& c : r.ext_) c = c == 0 ? 0 : p() - c;
        break;
    }
    return r;
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r(a.spec_);
    switch (a.spec_.kind()) {
      case FieldSpec::Kind::rationals:
        r.rat_ = a.rat_ * b.rat_;
        break;
      case FieldSpec::Kind::prime:
        r.res_ = detail::mulmod(a.res_, b.res_, a.p());
        break;
      case FieldSpec::Kind::extension: {
        auto prod = detail::fp_mul(a.ext_, b.ext_, a.p());
        prod = detail::fp_rem(std::move(prod), a.spec_.modulus(), a.p());
        prod.resize(a.spec_.extension_degree(), 0);
        r.ext_ = std::move(prod);
        break;
      }
    }
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) fail_precondition("division by zero");
    Scalar r(spec_);
    switch (spec_.kind()) {
      case FieldSpec::Kind::rationals:
        r.rat_ = 1 / rat_;
        break;
      case FieldSpec::Kind::prime:
        r.res_ = detail::invmod(res_, p());
        break;
      case FieldSpec::Kind::extension: {
        auto [u, g] = detail::fp_ext_gcd(ext_, spec_.modulus(), p());
        int dg = detail::fp_degree(g);
        if (dg != 0) fail_internal("modulus not coprime with nonzero element");
        std::uint64_t scale = detail::invmod(g[0], p());
        for (auto& c : u) c = detail::mulmod(c, scale, p());
        u = detail::fp_rem(std::move(u), spec_.modulus(), p());
        u.resize(spec_.extension_degree(), 0);
        r.ext_ = std::move(u);
        break;
      }
    }
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(std::uint64_t e) const {
    Scalar base = *this;
    Scalar acc = one(spec_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.spec_ != b.spec_) return false;
    switch (a.spec_.kind()) {
      case FieldSpec::Kind::rationals:
        return a.rat_ == b.rat_;
      case FieldSpec::Kind::prime:
        return a.res_ == b.res_;
      case FieldSpec::Kind::extension:
        return a.ext_ == b.ext_;
    }
    fail_internal("bad field kind");
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order used only to pick deterministic witnesses.
  static int compare(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    switch (a.spec_.kind()) {
      case FieldSpec::Kind::rationals:
        return a.rat_ < b.rat_ ? -1 : (a.rat_ == b.rat_ ? 0 : 1);
      default: {
        std::uint64_t ia = a.index(), ib = b.index();
        return ia < ib ? -1 : (ia == ib ? 0 : 1);
      }
    }
  }

  // Canonical text: rationals as "n" or "n/d", residues as decimal, extension
  // elements as a t-polynomial, e.g. "2+t" (caller adds parentheses).
  std::string str() const {
    switch (spec_.kind()) {
      case FieldSpec::Kind::rationals: {
        std::ostringstream os;
        os << rat_;
        return os.str();
      }
      case FieldSpec::Kind::prime:
        return std::to_string(res_);
      case FieldSpec::Kind::extension: {
        std::string s;
        for (std::size_t i = 0; i < ext_.size(); ++i) {
          if (ext_[i] == 0) continue;
          if (!s.empty()) s += "+";
          if (i == 0) {
            s += std::to_string(ext_[i]);
          } else {
            if (ext_[i] != 1) s += std::to_string(ext_[i]) + "*";
            s += i == 1 ? "t" : "t^" + std::to_string(i);
          }
        }
        return s.empty() ? "0" : s;
      }
    }
    fail_internal("bad field kind");
  }

  // True when the representative needs parentheses inside a product.
  bool needs_parens() const {
    if (spec_.kind() != FieldSpec::Kind::extension) return false;
    return detail::fp_degree(ext_) > 0;
  }

 private:
  explicit Scalar(FieldSpec fs) : spec_(std::move(fs)), rat_(0) {
    if (spec_.kind() == FieldSpec::Kind::extension) ext_.assign(spec_.extension_degree(), 0);
  }

  static std::uint64_t reduce_bigint(const BigInt& v, std::uint64_t p) {
    BigInt r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }

  std::uint64_t p() const { return spec_.characteristic(); }

  void check_same(const Scalar& o) const {
    if (spec_ != o.spec_) fail_precondition("scalar field mismatch");
  }

  FieldSpec spec_;
  Rational rat_;
  std::uint64_t res_ = 0;
  std::vector<std::uint64_t> ext_;
};

}  // namespace superjac
