#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "linkhom/poly.hpp"

namespace linkhom {

enum class Theory { kh, tlee, bn };

inline std::string theory_name(Theory t) {
  switch (t) {
    case Theory::kh: return "kh";
    case Theory::tlee: return "tlee";
    case Theory::bn: return "bn";
  }
  return "?";
}

inline Theory parse_theory(const std::string& s) {
  if (s == "kh") return Theory::kh;
  if (s == "tlee") return Theory::tlee;
  if (s == "bn") return Theory::bn;
  fail(ErrorCode::parse, "unknown theory '" + s + "' (kh, tlee, bn)");
}

// a*1 + b*X with coefficients in F[U] (constants for Kh and TLee).
template <class F>
struct AlgebraElement {
  PolyU<F> one, x;
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
  AlgebraElement& operator+=(const AlgebraElement& o) { one += o.one; x += o.x; return *this; }
  AlgebraElement& operator-=(const AlgebraElement& o) { one -= o.one; x -= o.x; return *this; }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const PolyU<F>& s, const AlgebraElement& a) { return {s * a.one, s * a.x}; }
  const PolyU<F>& operator[](int b) const { return b == 0 ? one : x; }
  PolyU<F>& operator[](int b) { return b == 0 ? one : x; }
  bool is_zero() const { return one.is_zero() && x.is_zero(); }
};

// Rank-n tensor power in the (1,X) basis; index bit k (from the left factor) = 1 means X.
template <class F, int N>
struct Tensor {
  std::array<PolyU<F>, (1 << N)> c{};
  friend bool operator==(const Tensor&, const Tensor&) = default;
  Tensor& operator+=(const Tensor& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
};

template <class F>
using Tensor2 = Tensor<F, 2>;

// Basis index: 0 = 1, 1 = X.
template <class F>
class FrobeniusSpec {
 public:
  explicit FrobeniusSpec(Theory t) : theory_(t) {}

  Theory theory() const { return theory_; }

  static AlgebraElement<F> basis(int b) {
    AlgebraElement<F> e;
    e[b] = PolyU<F>(F(1));
    return e;
  }
  AlgebraElement<F> unit() const { return basis(0); }

  // X*X expressed in the basis.
  AlgebraElement<F> x_squared() const {
    switch (theory_) {
      case Theory::kh: return {};
      case Theory::tlee: return basis(1);
      case Theory::bn: return {PolyU<F>(), PolyU<F>::u_power(1)};
    }
    return {};
  }
  // Coefficient t in Delta(1) = X⊗1 + 1⊗X + t·1⊗1.
  PolyU<F> delta_correction() const {
    switch (theory_) {
      case Theory::kh: return {};
      case Theory::tlee: return PolyU<F>(F(-1));
      case Theory::bn: return PolyU<F>::monomial(F(-1), 1);
    }
    return {};
  }

  AlgebraElement<F> multiply(const AlgebraElement<F>& a, const AlgebraElement<F>& b) const {
    check_ring(a);
    check_ring(b);
    AlgebraElement<F> r;
    r.one = a.one * b.one;
    r.x = a.one * b.x + a.x * b.one;
    return r + (a.x * b.x) * x_squared();
  }

  Tensor2<F> comultiply(const AlgebraElement<F>& a) const {
    check_ring(a);
    Tensor2<F> t;
    // Delta(1) = X⊗1 + 1⊗X + t 1⊗1; Delta(X) = X⊗X
    t.c[0b10] += a.one;
    t.c[0b01] += a.one;
    t.c[0b00] += a.one * delta_correction();
    t.c[0b11] += a.x;
    return t;
  }

  PolyU<F> counit(const AlgebraElement<F>& a) const { return a.x; }

  static int degree(int b) { return b == 0 ? 0 : -2; }
  static int filtration_level(int b) { return b == 0 ? 0 : -2; }

  // Exhaustive check on basis elements: co-commutativity, co-associativity,
  // counit, and Delta(ab) = a·Delta(b).
  bool check_axioms(std::vector<std::string>* failures = nullptr) const {
    bool ok = true;
    auto note = [&](bool cond, const std::string& what) {
      if (!cond) {
        ok = false;
        if (failures) failures->push_back(what);
      }
    };
    for (int b = 0; b < 2; ++b) {
      auto d = comultiply(basis(b));
      note(d.c[0b01] == d.c[0b10], "co-commutativity on basis " + std::to_string(b));

      Tensor<F, 3> left, right;
      for (int i = 0; i < 4; ++i) {
        if (d.c[i].is_zero()) continue;
        int l = i >> 1, r = i & 1;
        auto dl = comultiply(basis(l));
        auto dr = comultiply(basis(r));
        for (int j = 0; j < 4; ++j) {
          left.c[(j << 1) | r] += d.c[i] * dl.c[j];
          right.c[(l << 2) | j] += d.c[i] * dr.c[j];
        }
      }
      note(left == right, "co-associativity on basis " + std::to_string(b));

      AlgebraElement<F> back;
      for (int i = 0; i < 4; ++i) back[i & 1] += d.c[i] * counit(basis(i >> 1));
      note(back == basis(b), "counit on basis " + std::to_string(b));

      for (int a = 0; a < 2; ++a) {
        auto lhs = comultiply(multiply(basis(a), basis(b)));
        Tensor2<F> rhs;
        for (int i = 0; i < 4; ++i) {
          if (d.c[i].is_zero()) continue;
          auto m = multiply(basis(a), basis(i >> 1));
          for (int k = 0; k < 2; ++k) rhs.c[(k << 1) | (i & 1)] += d.c[i] * m[k];
        }
        note(lhs == rhs, "Frobenius compatibility on basis pair");
      }
    }
    return ok;
  }

 private:
  void check_ring(const AlgebraElement<F>& a) const {
    if (theory_ == Theory::bn) return;
    require(a.one.degree() <= 0 && a.x.degree() <= 0, ErrorCode::ring_mismatch,
            "polynomial coefficient in a " + theory_name(theory_) + " algebra element");
  }
  Theory theory_;
};

template <class F>
struct ConjugateLabels {
  AlgebraElement<F> x_circ;    // X
  AlgebraElement<F> x_bullet;  // X - U
  std::vector<std::pair<std::string, bool>> facts;
};

template <class F>
ConjugateLabels<F> conjugate_labels(const FrobeniusSpec<F>& spec) {
  require(spec.theory() == Theory::bn, ErrorCode::invalid_argument, "conjugate labels need the BN algebra");
  ConjugateLabels<F> r;
  r.x_circ = FrobeniusSpec<F>::basis(1);
  r.x_bullet = {PolyU<F>::monomial(F(-1), 1), PolyU<F>(F(1))};
  const auto& xo = r.x_circ;
  const auto& xb = r.x_bullet;
  auto u = PolyU<F>::u_power(1);
  auto tensor_square = [](const AlgebraElement<F>& a) {
    Tensor2<F> t;
    for (int i = 0; i < 4; ++i) t.c[i] = a[i >> 1] * a[i & 1];
    return t;
  };
  r.facts.push_back({"x_circ*x_bullet = 0", spec.multiply(xo, xb).is_zero()});
  r.facts.push_back({"x_circ^2 = U x_circ", spec.multiply(xo, xo) == u * xo});
  r.facts.push_back({"x_bullet^2 = -U x_bullet", spec.multiply(xb, xb) == (-u) * xb});
  r.facts.push_back({"Delta(x_circ) = x_circ⊗x_circ", spec.comultiply(xo) == tensor_square(xo)});
  r.facts.push_back({"Delta(x_bullet) = x_bullet⊗x_bullet", spec.comultiply(xb) == tensor_square(xb)});
  return r;
}

enum class Specialization { u_to_0, u_to_1 };

template <class F>
AlgebraElement<F> specialize(const AlgebraElement<F>& a, Specialization s) {
  F u = s == Specialization::u_to_0 ? F(0) : F(1);
  return {PolyU<F>(a.one.evaluate(u)), PolyU<F>(a.x.evaluate(u))};
}

template <class F>
Tensor2<F> specialize(const Tensor2<F>& t, Specialization s) {
  F u = s == Specialization::u_to_0 ? F(0) : F(1);
  Tensor2<F> r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = PolyU<F>(t.c[i].evaluate(u));
  return r;
}

}  // namespace linkhom
