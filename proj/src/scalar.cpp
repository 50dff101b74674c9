#include "pdmodel/scalar.hpp"

#include <cctype>
#include <ostream>

#include "pdmodel/errors.hpp"

namespace pdmodel {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ContractError("field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

Scalar::Scalar(long num, long den) {
  if (den == 0) throw ContractError("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Scalar::Scalar(const mpq_class& v, std::uint32_t p) : v_(v), p_(p) {
  v_.canonicalize();
  reduce();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class mod(p_);
  mpz_class num = v_.get_num() % mod;
  if (num < 0) num += mod;
  if (v_.get_den() != 1) {
    mpz_class den = v_.get_den() % mod;
    if (den == 0) throw ContractError("denominator divisible by the characteristic " + std::to_string(p_));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    num = (num * inv) % mod;
  }
  v_ = mpq_class(num);
}

void Scalar::adopt_modulus(std::uint32_t other) {
  if (other == p_ || other == 0) return;
  if (p_ != 0) throw ContractError("mixing scalars from F_" + std::to_string(p_) + " and F_" + std::to_string(other));
  p_ = other;
  reduce();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  adopt_modulus(o.p_);
  v_ += o.v_;
  if (p_ != 0) {
    // o may still be an unreduced rational when it carries no modulus
    if (o.p_ == 0) {
      reduce();
    } else if (v_ >= p_) {
      v_ -= p_;
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  adopt_modulus(o.p_);
  v_ -= o.v_;
  if (p_ != 0) {
    if (o.p_ == 0) {
      reduce();
    } else if (v_ < 0) {
      v_ += p_;
    }
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  adopt_modulus(o.p_);
  v_ *= o.v_;
  reduce();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ == 0) {
    r.v_ = -v_;
  } else if (!is_zero()) {
    r.v_ = p_ - v_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ContractError("division by zero");
  Scalar r;
  r.p_ = p_;
  r.v_ = 1 / v_;
  r.v_.canonicalize();
  r.reduce();
  return r;
}

Scalar Scalar::parse(std::string_view text, const Field& f) {
  auto bad = [&](const char* why) { return ParseError("bad scalar \"" + std::string(text) + "\": " + why); };
  auto check_int = [&](std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw bad("empty integer");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad("not an integer or fraction");
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  check_int(num);
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    check_int(den);
    d = mpz_class(std::string(den[0] == '+' ? den.substr(1) : den), 10);
    if (d == 0) throw bad("zero denominator");
  }
  mpq_class q(n, d);
  q.canonicalize();
  try {
    return Scalar(q, f.characteristic());
  } catch (const ContractError& e) {
    throw bad(e.what());
  }
}

std::string Scalar::to_string() const { return v_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace pdmodel
