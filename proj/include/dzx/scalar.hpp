#pragma once
// Exact arithmetic in Z[w, 1/sqrt2] with w = e^{i pi/4}, plus a complex
// floating fallback and exact angles (rational multiples of pi, float
// radians, or integer-linear expressions in named variables).

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace dzx {

using BigInt = boost::multiprecision::cpp_int;

struct NotExactAngle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long long gcd_ll(long long a, long long b) {
  while (b) { long long t = a % b; a = b; b = t; }
  return a < 0 ? -a : a;
}

// ---------------------------------------------------------------------------
// Angle: ExactPi (num/den * pi, reduced, in [0, 2pi)), Float radians, or
// Linear (integer combination of named variables plus an ExactPi constant).
// ---------------------------------------------------------------------------
struct ExactPi {
  long long num = 0;  // value = (num/den) * pi
  long long den = 1;

  ExactPi() = default;
  ExactPi(long long n, long long d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::invalid_argument("ExactPi: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    // reduce fraction, then take num/den mod 2 so 0 <= value < 2pi
    long long g = gcd_ll(num, den);
    if (g > 1) { num /= g; den /= g; }
    long long period = 2 * den;
    num %= period;
    if (num < 0) num += period;
  }

  double radians() const { return M_PI * double(num) / double(den); }
  bool operator==(const ExactPi& o) const { return num == o.num && den == o.den; }
  bool operator<(const ExactPi& o) const { return num * o.den < o.num * den; }
  ExactPi operator+(const ExactPi& o) const { return {num * o.den + o.num * den, den * o.den}; }
  ExactPi operator-() const { return {-num, den}; }
  ExactPi operator*(long long k) const { return {num * k, den}; }
  // multiple of pi/4 ? (denominator divides 4 after reduction)
  bool is_pi4_multiple() const { return 4 % den == 0; }
  // exponent k such that value = k*pi/4 (requires is_pi4_multiple)
  int pi4_steps() const {
    if (!is_pi4_multiple()) throw NotExactAngle("angle is not a multiple of pi/4");
    return int(num * (4 / den));
  }
};

struct Angle {
  enum class Tag { Exact, Float, Linear } tag = Tag::Exact;
  ExactPi exact{};                         // Tag::Exact, and the Linear constant
  double radians_ = 0.0;                   // Tag::Float
  std::map<std::string, long long> coeffs; // Tag::Linear (nonzero entries only)

  Angle() = default;
  static Angle pi_frac(long long n, long long d) { Angle a; a.tag = Tag::Exact; a.exact = ExactPi(n, d); return a; }
  static Angle zero() { return pi_frac(0, 1); }
  static Angle pi() { return pi_frac(1, 1); }
  static Angle from_float(double r) { Angle a; a.tag = Tag::Float; a.radians_ = std::remainder(r, 2 * M_PI); return a; }
  static Angle var(const std::string& v, long long coeff = 1, ExactPi cst = {}) {
    Angle a; a.tag = Tag::Linear; a.coeffs[v] = coeff; a.exact = cst;
    if (coeff == 0) a.coeffs.erase(v);
    return a;
  }

  bool is_exact() const { return tag == Tag::Exact; }
  bool is_linear() const { return tag == Tag::Linear; }
  bool is_zero() const { return tag == Tag::Exact && exact.num == 0; }
  double radians() const {
    if (tag == Tag::Exact) return exact.radians();
    if (tag == Tag::Float) return radians_;
    throw NotExactAngle("linear angle has no value; instantiate first");
  }
  bool operator==(const Angle& o) const {
    if (tag != o.tag) return false;
    switch (tag) {
      case Tag::Exact: return exact == o.exact;
      case Tag::Float: return radians_ == o.radians_;
      case Tag::Linear: return coeffs == o.coeffs && exact == o.exact;
    }
    return false;
  }
  Angle operator+(const Angle& o) const {
    if (tag == Tag::Exact && o.tag == Tag::Exact) { Angle r; r.exact = exact + o.exact; return r; }
    if (tag == Tag::Linear || o.tag == Tag::Linear) {
      Angle r; r.tag = Tag::Linear;
      r.coeffs = coeffs;
      for (auto& [v, c] : o.coeffs) { r.coeffs[v] += c; if (r.coeffs[v] == 0) r.coeffs.erase(v); }
      if (tag == Tag::Float || o.tag == Tag::Float) throw NotExactAngle("cannot add float to linear angle");
      r.exact = exact + o.exact;
      if (r.coeffs.empty()) r.tag = Tag::Exact;
      return r;
    }
    return from_float(radians() + o.radians());
  }
  Angle operator-() const {
    switch (tag) {
      case Tag::Exact: { Angle r; r.exact = -exact; return r; }
      case Tag::Float: return from_float(-radians_);
      default: {
        Angle r = *this;
        for (auto& [v, c] : r.coeffs) c = -c;
        r.exact = -r.exact;
        return r;
      }
    }
  }
  Angle operator*(long long k) const {
    switch (tag) {
      case Tag::Exact: { Angle r; r.exact = exact * k; return r; }
      case Tag::Float: return from_float(radians_ * double(k));
      default: {
        Angle r = *this;
        for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
          it->second *= k;
          it = (it->second == 0) ? r.coeffs.erase(it) : std::next(it);
        }
        r.exact = r.exact * k;
        if (r.coeffs.empty()) r.tag = Tag::Exact;
        return r;
      }
    }
  }
  // substitute variables; every variable must be bound
  Angle instantiate(const std::map<std::string, Angle>& bind) const {
    if (tag != Tag::Linear) return *this;
    Angle r; r.exact = exact;
    for (auto& [v, c] : coeffs) {
      auto it = bind.find(v);
      if (it == bind.end()) throw NotExactAngle("unbound angle variable: " + v);
      r = r + it->second * c;
    }
    return r;
  }
};

// ---------------------------------------------------------------------------
// CycloScalar: (a + b w + c w^2 + d w^3) / sqrt2^k, w = e^{i pi/4}, w^4 = -1.
// Canonical: k = 0 or numerator not divisible by sqrt2 = w - w^3.
// ---------------------------------------------------------------------------
struct CycloScalar {
  BigInt a = 0, b = 0, c = 0, d = 0;
  unsigned k = 0;

  CycloScalar() = default;
  CycloScalar(BigInt a_, BigInt b_, BigInt c_, BigInt d_, unsigned k_ = 0)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)), k(k_) {
    normalize();
  }
  static CycloScalar from_int(long long n) { return CycloScalar(n, 0, 0, 0, 0); }
  static CycloScalar one() { return from_int(1); }
  static CycloScalar zero() { return from_int(0); }
  static CycloScalar sqrt2() { return CycloScalar(0, 1, 0, -1, 0); }
  static CycloScalar inv_sqrt2() { return CycloScalar(1, 0, 0, 0, 1); }
  // e^{i alpha} for alpha an exact multiple of pi/4
  static CycloScalar from_phase(const Angle& ang) {
    if (!ang.is_exact() || !ang.exact.is_pi4_multiple())
      throw NotExactAngle("scalar_from_phase requires an exact multiple of pi/4");
    int s = ang.exact.pi4_steps();  // 0..7
    CycloScalar r;
    BigInt sign = (s >= 4) ? -1 : 1;
    switch (s % 4) {
      case 0: r.a = sign; break;
      case 1: r.b = sign; break;
      case 2: r.c = sign; break;
      case 3: r.d = sign; break;
    }
    return r;
  }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

  // divisibility of the numerator by sqrt2: a=c and b=d mod 2
  bool numerator_divisible_by_sqrt2() const {
    return (a - c) % 2 == 0 && (b - d) % 2 == 0;
  }
  void divide_numerator_by_sqrt2() {
    // quotient (a',b',c',d') of y = (a,b,c,d): b'-d'=a, a'+c'=b, b'+d'=c, c'-a'=d
    BigInt na = (b - d) / 2, nb = (a + c) / 2, nc = (b + d) / 2, nd = (c - a) / 2;
    a = na; b = nb; c = nc; d = nd;
  }
  void normalize() {
    if (is_zero()) { k = 0; return; }
    while (k > 0 && numerator_divisible_by_sqrt2()) {
      divide_numerator_by_sqrt2();
      --k;
    }
  }

  CycloScalar operator+(const CycloScalar& o) const {
    CycloScalar x = *this, y = o;
    while (x.k < y.k) { x.mul_numerator_sqrt2(); ++x.k; }
    while (y.k < x.k) { y.mul_numerator_sqrt2(); ++y.k; }
    return CycloScalar(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d, x.k);
  }
  CycloScalar operator-() const { return CycloScalar(-a, -b, -c, -d, k); }
  CycloScalar operator-(const CycloScalar& o) const { return *this + (-o); }
  CycloScalar operator*(const CycloScalar& o) const {
    // negacyclic convolution mod w^4 = -1
    BigInt r[7] = {0, 0, 0, 0, 0, 0, 0};
    BigInt x[4] = {a, b, c, d}, y[4] = {o.a, o.b, o.c, o.d};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i + j] += x[i] * y[j];
    return CycloScalar(r[0] - r[4], r[1] - r[5], r[2] - r[6], r[3], k + o.k);
  }
  CycloScalar conj() const { return CycloScalar(a, -d, -c, -b, k); }
  bool operator==(const CycloScalar& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d && k == o.k;
  }
  bool operator!=(const CycloScalar& o) const { return !(*this == o); }

  std::complex<double> to_complex() const {
    const double s = std::sqrt(0.5);
    std::complex<double> w(s, s);
    std::complex<double> v = double(a) + double(b) * w + double(c) * w * w + double(d) * w * w * w;
    return v / std::pow(std::sqrt(2.0), double(k));
  }

 private:
  void mul_numerator_sqrt2() {  // numerator *= (w - w^3)
    BigInt na = b - d, nb = a + c, nc = b + d, nd = c - a;
    a = na; b = nb; c = nc; d = nd;
  }
};

// ApproxScalar: complex<double> wrapper with the same interface surface.
using ApproxScalar = std::complex<double>;

inline ApproxScalar approx_from_phase(const Angle& a) {
  return std::polar(1.0, a.radians());
}

// scalar traits used by the templated tensor engine
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<CycloScalar> {
  static CycloScalar zero() { return CycloScalar::zero(); }
  static CycloScalar one() { return CycloScalar::one(); }
  static CycloScalar inv_sqrt2() { return CycloScalar::inv_sqrt2(); }
  static CycloScalar from_int(long long n) { return CycloScalar::from_int(n); }
  static CycloScalar phase(const Angle& a) { return CycloScalar::from_phase(a); }
  static bool eq(const CycloScalar& x, const CycloScalar& y, double) { return x == y; }
  static std::complex<double> to_complex(const CycloScalar& x) { return x.to_complex(); }
};

template <>
struct ScalarOps<ApproxScalar> {
  static ApproxScalar zero() { return {0, 0}; }
  static ApproxScalar one() { return {1, 0}; }
  static ApproxScalar inv_sqrt2() { return {std::sqrt(0.5), 0}; }
  static ApproxScalar from_int(long long n) { return {double(n), 0}; }
  static ApproxScalar phase(const Angle& a) { return approx_from_phase(a); }
  static bool eq(const ApproxScalar& x, const ApproxScalar& y, double tol) { return std::abs(x - y) <= tol; }
  static std::complex<double> to_complex(const ApproxScalar& x) { return x; }
};

}  // namespace dzx
