#include "reflab/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace reflab {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

bool fits_inline(i128 v) { return v > kMin && v <= kMax; }

mpz_class mpz_from_int128(i128 v) {
  u128 mag = abs128(v);
  std::uint64_t limbs[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  if (v < 0) out = -out;
  return out;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finaliser folded into a running hash
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (v ^ (v >> 31));
}

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return mix(0, h);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  std::string text(s);
  if (!text.empty() && text.front() == '+') text.erase(0, 1);
  if (text.empty() || text == "-") throw std::invalid_argument("empty integer");
  for (std::size_t i = (text.front() == '-' ? 1 : 0); i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("not an integer: " + text);
    }
  }
  return mpz_class(text, 10);
}

// Exact value of a decimal literal such as "-1.25" or "3e-2".
mpq_class parse_decimal(std::string_view s) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    exponent = std::stol(std::string(s.substr(e + 1)));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed decimal");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed decimal: " + std::string(s));
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal: " + std::string(s));
  mpz_class num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  mpq_class q = shift >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return q;
}

}  // namespace

Scalar::Scalar(const Scalar& other) : den_(other.den_) {
  if (other.is_big()) {
    big_ = new mpq_class(*other.big_);
  } else {
    std::memcpy(&num_, &other.num_, sizeof num_);
  }
}

Scalar::Scalar(Scalar&& other) noexcept : den_(other.den_) {
  std::memcpy(&num_, &other.num_, sizeof num_);  // active member, including big_
  other.den_ = 1;
  other.num_ = 0;
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    Scalar tmp(other);
    *this = std::move(tmp);
  }
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  if (this != &other) {
    release();
    den_ = other.den_;
    std::memcpy(&num_, &other.num_, sizeof num_);
    other.den_ = 1;
    other.num_ = 0;
  }
  return *this;
}

Scalar::~Scalar() { release(); }

void Scalar::release() noexcept {
  if (is_big()) {
    delete big_;
    den_ = 1;
    num_ = 0;
  }
}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return from_int128(num, den);
}

Scalar Scalar::from_int128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(abs128(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  Scalar out;
  if (fits_inline(num) && den <= kMax) {
    out.num_ = static_cast<std::int64_t>(num);
    out.den_ = static_cast<std::int64_t>(den);
    return out;
  }
  mpq_class q(mpz_from_int128(num), mpz_from_int128(den));
  return from_mpq(q);
}

Scalar Scalar::from_mpq(const mpq_class& q_in) {
  mpq_class q = q_in;
  q.canonicalize();
  Scalar out;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
    long nv = n.get_si();
    if (nv != kMin) {
      out.num_ = nv;
      out.den_ = d.get_si();
      return out;
    }
  }
  out.den_ = kBigTag;
  out.big_ = new mpq_class(std::move(q));
  return out;
}

Scalar Scalar::approx(double v) noexcept {
  Scalar out;
  out.den_ = kApproxTag;
  out.dbl_ = v;
  return out;
}

Scalar Scalar::parse(std::string_view raw, ScalarMode mode) {
  std::string_view text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty scalar");
  if (mode == ScalarMode::Approx && text.find('/') == std::string_view::npos) {
    std::size_t used = 0;
    double v = std::stod(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("malformed number: " + std::string(text));
    return approx(v);
  }
  Scalar exact;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(text.substr(0, slash)));
    mpz_class den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    exact = from_mpq(mpq_class(num, den));
  } else if (text.find_first_of(".eE") != std::string_view::npos) {
    exact = from_mpq(parse_decimal(text));
  } else {
    exact = from_mpq(mpq_class(parse_integer(text)));
  }
  if (mode == ScalarMode::Approx) return approx(exact.to_double());
  return exact;
}

bool Scalar::is_integer() const noexcept {
  if (is_small()) return den_ == 1;
  if (is_big()) return mpz_cmp_ui(big_->get_den_mpz_t(), 1) == 0;
  return std::abs(dbl_ - std::nearbyint(dbl_)) <= kApproxEpsilon;
}

double Scalar::to_double() const {
  if (is_small()) return static_cast<double>(num_) / static_cast<double>(den_);
  if (is_big()) return big_->get_d();
  return dbl_;
}

mpq_class Scalar::to_mpq() const {
  if (is_small()) return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  if (is_big()) return *big_;
  throw std::logic_error("to_mpq on an approximate scalar");
}

int Scalar::sign() const noexcept {
  if (is_small()) return (num_ > 0) - (num_ < 0);
  if (is_big()) return mpq_sgn(big_->get_mpq_t());
  if (std::abs(dbl_) <= kApproxEpsilon) return 0;
  return dbl_ > 0 ? 1 : -1;
}

Scalar Scalar::operator-() const {
  if (is_small()) {
    Scalar out;
    out.num_ = -num_;  // inline numerators never hold INT64_MIN
    out.den_ = den_;
    return out;
  }
  if (is_big()) return from_mpq(-*big_);
  return approx(-dbl_);
}

Scalar Scalar::exact_op(const Scalar& a, const Scalar& b, char op) {
  if (a.is_small() && b.is_small()) {
    const i128 an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    switch (op) {
      case '+':
        if (ad == 1 && bd == 1) return from_int128(an + bn, 1);
        return from_int128(an * bd + bn * ad, ad * bd);
      case '-':
        if (ad == 1 && bd == 1) return from_int128(an - bn, 1);
        return from_int128(an * bd - bn * ad, ad * bd);
      case '*':
        return from_int128(an * bn, ad * bd);
      case '/':
        if (bn == 0) throw std::domain_error("division by zero");
        return from_int128(an * bd, ad * bn);
      default:
        break;
    }
  }
  mpq_class x = a.to_mpq();
  mpq_class y = b.to_mpq();
  switch (op) {
    case '+':
      return from_mpq(x + y);
    case '-':
      return from_mpq(x - y);
    case '*':
      return from_mpq(x * y);
    case '/':
      if (y == 0) throw std::domain_error("division by zero");
      return from_mpq(x / y);
    default:
      throw std::logic_error("unknown operator");
  }
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact_op(a, b, '+');
  return Scalar::approx(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact_op(a, b, '-');
  return Scalar::approx(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact_op(a, b, '*');
  return Scalar::approx(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar::exact_op(a, b, '/');
  return Scalar::approx(a.to_double() / b.to_double());
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.is_small() && b.is_small()) {
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return (lhs > rhs) - (lhs < rhs);
  }
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.to_mpq(), b.to_mpq());
    return (c > 0) - (c < 0);
  }
  return Scalar::approx(a.to_double() - b.to_double()).sign();
}

std::string Scalar::str() const {
  if (is_small()) {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  if (is_big()) return big_->get_str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", dbl_);
  return buf;
}

std::string Scalar::key() const {
  if (is_exact()) return str();
  if (std::abs(dbl_) < kApproxEpsilon) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", dbl_);
  return buf;
}

std::uint64_t Scalar::hash() const {
  if (is_small()) {
    return mix(mix(0x51ed27ULL, static_cast<std::uint64_t>(num_)), static_cast<std::uint64_t>(den_));
  }
  return hash_string(key());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

int compare_lex(std::span<const Scalar> a, std::span<const Scalar> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i], b[i]); c != 0) return c;
  }
  return (a.size() > b.size()) - (a.size() < b.size());
}

Scalar sum(std::span<const Scalar> v) {
  Scalar total;
  for (const Scalar& x : v) total += x;
  return total;
}

}  // namespace reflab
