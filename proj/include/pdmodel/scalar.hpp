#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pdmodel {

/// Ground field descriptor: either the rationals or a prime field F_p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }
  /// Throws ContractError if p is not prime.
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }

  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator (gmp canonical form); prime-field residues live in [0, p).
///
/// A scalar with modulus 0 is a rational. Combining a rational with a residue
/// reduces the rational into the prime field, so integer literals mix freely.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  Scalar(const mpq_class& v, std::uint32_t p);

  static Scalar zero(const Field& f) { return Scalar(mpq_class(0), f.characteristic()); }
  static Scalar one(const Field& f) { return Scalar(mpq_class(1), f.characteristic()); }
  static Scalar from_int(long v, const Field& f) { return Scalar(mpq_class(v), f.characteristic()); }

  /// Parses "a" or "a/b" (decimal integers, optional sign). Throws ParseError.
  static Scalar parse(std::string_view text, const Field& f);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint32_t modulus() const { return p_; }
  const mpq_class& value() const { return v_; }

  std::string to_string() const;

  Scalar inverse() const;  // throws ContractError on zero

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void adopt_modulus(std::uint32_t other);
  void reduce();

  mpq_class v_;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// (-1)^e as a plain sign.
inline int koszul_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace pdmodel
