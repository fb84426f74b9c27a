#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "linkhom/error.hpp"

namespace linkhom {

namespace detail {
constexpr bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace detail

// Prime field with compile-time modulus.
template <std::uint32_t P>
class Fp {
  static_assert(detail::is_prime(P), "modulus must be prime");

 public:
  static constexpr int characteristic = static_cast<int>(P);

  constexpr Fp() = default;
  constexpr Fp(std::int64_t v)
      : v_(static_cast<std::uint32_t>(((v % static_cast<std::int64_t>(P)) + P) % P)) {}

  constexpr std::uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Fp operator+(Fp a, Fp b) {
    std::uint32_t s = a.v_ + b.v_;
    return raw(s >= P ? s - P : s);
  }
  friend constexpr Fp operator-(Fp a, Fp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P - b.v_); }
  friend constexpr Fp operator*(Fp a, Fp b) {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % P));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  constexpr Fp operator-() const { return raw(v_ == 0 ? 0 : P - v_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  Fp inverse() const {
    require(v_ != 0, ErrorCode::invalid_argument, "division by zero in F_p");
    std::uint64_t r = 1, b = v_;
    for (std::uint32_t e = P - 2; e; e >>= 1, b = b * b % P)
      if (e & 1) r = r * b % P;
    return raw(static_cast<std::uint32_t>(r));
  }

  std::string str() const { return std::to_string(v_); }

 private:
  static constexpr Fp raw(std::uint32_t v) {
    Fp f;
    f.v_ = v;
    return f;
  }
  std::uint32_t v_ = 0;
};

// Exact rationals backed by GMP.
class Rational {
 public:
  static constexpr int characteristic = 0;

  Rational() = default;
  Rational(std::int64_t v) : q_(static_cast<long>(v)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(!b.is_zero(), ErrorCode::invalid_argument, "division by zero in Q");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  Rational inverse() const { return Rational(1) / *this; }
  std::string str() const { return q_.get_str(); }

 private:
  mpq_class q_;
};

template <class F>
concept Field = requires(F a, F b) {
  { F::characteristic } -> std::convertible_to<int>;
  { a + b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

// Runtime field selector; 0 means Q.
struct FieldSpec {
  int characteristic = 0;

  bool is_rational() const { return characteristic == 0; }
  std::string name() const { return is_rational() ? "Q" : "F" + std::to_string(characteristic); }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline const std::vector<int>& supported_primes() {
  static const std::vector<int> primes = {2, 3, 5, 7, 11, 13};
  return primes;
}

inline FieldSpec parse_field(const std::string& s) {
  if (s == "0" || s == "Q" || s == "q") return {0};
  std::string t = (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) ? s.substr(1) : s;
  int p = 0;
  try {
    std::size_t used = 0;
    p = std::stoi(t, &used);
    if (used != t.size()) p = -1;
  } catch (const std::exception&) {
    p = -1;
  }
  for (int q : supported_primes())
    if (q == p) return {p};
  fail(ErrorCode::parse, "unsupported field '" + s + "' (use 0 for Q or one of 2,3,5,7,11,13)");
}

// Calls fn.template operator()<F>() with the scalar type selected by spec.
template <class Fn>
decltype(auto) with_field(FieldSpec spec, Fn&& fn) {
  switch (spec.characteristic) {
    case 0: return fn.template operator()<Rational>();
    case 2: return fn.template operator()<Fp<2>>();
    case 3: return fn.template operator()<Fp<3>>();
    case 5: return fn.template operator()<Fp<5>>();
    case 7: return fn.template operator()<Fp<7>>();
    case 11: return fn.template operator()<Fp<11>>();
    case 13: return fn.template operator()<Fp<13>>();
  }
  fail(ErrorCode::invalid_argument, "unsupported field characteristic " + std::to_string(spec.characteristic));
}

}  // namespace linkhom
