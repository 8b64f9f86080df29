#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and prime fields
// with a runtime modulus. Everything here is a value type; no floating
// point anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace separative {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Errors arising from mathematical preconditions (characteristic
/// restrictions, degree caps, undecidable strategies, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Errors from malformed textual input.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Residue in Z/pZ, carrying its modulus. Default-constructed values act
/// as a zero that adopts the modulus of the other operand.
class Fp {
public:
  Fp() = default;
  Fp(long long v, long long p) : p_(p) {
    if (p <= 0) throw std::invalid_argument("Fp: modulus must be positive");
    v_ = v % p;
    if (v_ < 0) v_ += p;
  }

  long long value() const { return v_; }
  long long modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp &a, const Fp &b) {
    long long p = joint_modulus(a, b);
    if (p == 0) return Fp();
    return Fp(a.v_ + b.v_, p);
  }
  friend Fp operator-(const Fp &a, const Fp &b) {
    long long p = joint_modulus(a, b);
    if (p == 0) return Fp();
    return Fp(a.v_ - b.v_, p);
  }
  friend Fp operator*(const Fp &a, const Fp &b) {
    long long p = joint_modulus(a, b);
    if (p == 0) return Fp();
    return Fp(a.v_ * b.v_, p);
  }
  friend Fp operator/(const Fp &a, const Fp &b) { return a * b.inverse(); }
  Fp operator-() const { return p_ == 0 ? Fp() : Fp(-v_, p_); }
  Fp &operator+=(const Fp &o) { return *this = *this + o; }
  Fp &operator-=(const Fp &o) { return *this = *this - o; }
  Fp &operator*=(const Fp &o) { return *this = *this * o; }

  Fp inverse() const {
    if (v_ == 0 || p_ == 0) throw DomainError("Fp: division by zero");
    // extended Euclid
    long long a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      long long q = a / b;
      long long t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0, p_);
  }

  friend bool operator==(const Fp &a, const Fp &b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw std::invalid_argument("Fp: mixed moduli in comparison");
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp &a, const Fp &b) { return !(a == b); }

private:
  static long long joint_modulus(const Fp &a, const Fp &b) {
    if (a.p_ == 0) return b.p_;
    if (b.p_ == 0) return a.p_;
    if (a.p_ != b.p_) throw std::invalid_argument("Fp: mixed moduli");
    return a.p_;
  }

  long long v_ = 0;
  long long p_ = 0;
};

/// Field descriptor for the rationals.
struct RationalField {
  using Scalar = Rational;

  long long characteristic() const { return 0; }
  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  Scalar from_integer(long long n) const { return Rational(n); }
  Scalar from_fraction(long long n, long long d) const { return Rational(n, d); }
  static bool is_zero(const Scalar &c) { return c == 0; }

  std::string name() const { return "Q"; }
  std::string to_string(const Scalar &c) const { return c.str(); }

  friend bool operator==(const RationalField &, const RationalField &) { return true; }
  friend bool operator!=(const RationalField &, const RationalField &) { return false; }
};

/// Field descriptor for GF(p), p prime.
class PrimeField {
public:
  using Scalar = Fp;

  explicit PrimeField(long long p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
  }

  long long characteristic() const { return p_; }
  Scalar zero() const { return Fp(0, p_); }
  Scalar one() const { return Fp(1, p_); }
  Scalar from_integer(long long n) const { return Fp(n, p_); }
  Scalar from_fraction(long long n, long long d) const {
    return Fp(n, p_) / Fp(d, p_);
  }
  static bool is_zero(const Scalar &c) { return c.is_zero(); }

  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  std::string to_string(const Scalar &c) const { return std::to_string(c.value()); }

  friend bool operator==(const PrimeField &a, const PrimeField &b) { return a.p_ == b.p_; }
  friend bool operator!=(const PrimeField &a, const PrimeField &b) { return !(a == b); }

private:
  long long p_;
};

} // namespace separative
