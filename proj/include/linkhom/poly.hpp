#pragma once

#include <string>
#include <utility>
#include <vector>

#include "linkhom/field.hpp"

namespace linkhom {

// Polynomial in U over a field; no trailing zero coefficients.
template <class F>
class PolyU {
 public:
  PolyU() = default;
  PolyU(F c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit PolyU(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyU monomial(F c, int power) {
    if (c.is_zero()) return {};
    std::vector<F> v(static_cast<std::size_t>(power) + 1, F(0));
    v.back() = std::move(c);
    return PolyU(std::move(v));
  }
  static PolyU u_power(int power) { return monomial(F(1), power); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_unit() const { return c_.size() == 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : F(0); }
  const F& lead() const { return c_.back(); }

  // Largest e with U^e dividing this (-1 for zero).
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }

  F evaluate(const F& u) const {
    F r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * u + *it;
    return r;
  }

  PolyU monic() const {
    if (is_zero()) return {};
    F inv = lead().inverse();
    PolyU r = *this;
    for (auto& x : r.c_) x = x * inv;
    return r;
  }

  // Exact division by U^e; the low coefficients must vanish.
  PolyU shift_down(int e) const {
    for (int i = 0; i < e && i < static_cast<int>(c_.size()); ++i)
      require(c_[i].is_zero(), ErrorCode::internal, "polynomial not divisible by U^e");
    if (e >= static_cast<int>(c_.size())) return {};
    return PolyU(std::vector<F>(c_.begin() + e, c_.end()));
  }
  PolyU shift_up(int e) const {
    if (is_zero() || e == 0) return *this;
    std::vector<F> v(static_cast<std::size_t>(e), F(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return PolyU(std::move(v));
  }

  PolyU& operator+=(const PolyU& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PolyU& operator-=(const PolyU& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend PolyU operator+(PolyU a, const PolyU& b) { return a += b; }
  friend PolyU operator-(PolyU a, const PolyU& b) { return a -= b; }
  PolyU operator-() const {
    PolyU r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend PolyU operator*(const PolyU& a, const PolyU& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.c_[i].is_zero())
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return PolyU(std::move(v));
  }
  PolyU& operator*=(const PolyU& o) { return *this = *this * o; }
  friend bool operator==(const PolyU& a, const PolyU& b) { return a.c_ == b.c_; }

  // Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<PolyU, PolyU> divmod(const PolyU& a, const PolyU& b) {
    require(!b.is_zero(), ErrorCode::invalid_argument, "polynomial division by zero");
    std::vector<F> r = a.c_;
    int db = b.degree();
    if (a.degree() < db) return {PolyU(), a};
    std::vector<F> q(static_cast<std::size_t>(a.degree() - db) + 1, F(0));
    F inv = b.lead().inverse();
    for (int i = a.degree(); i >= db; --i) {
      if (r[i].is_zero()) continue;
      F f = r[i] * inv;
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    return {PolyU(std::move(q)), PolyU(std::move(r))};
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      std::string c = c_[i].str();
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c.erase(0, 1);
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      if (i == 0) out += c;
      else {
        if (c != "1") out += c;
        out += "U";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

}  // namespace linkhom
