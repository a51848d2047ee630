#pragma once
// Rational functions num/den over the sparse polynomial ring.  The stored
// form is canonical: gcd(num, den) = 1 and den has leading coefficient 1
// under the fixed monomial order, so equality is syntactic and printing is
// deterministic.

#include <map>
#include <stdexcept>
#include <string>

#include "poly.hpp"

namespace coha {

class RationalFn {
 public:
  RationalFn() : num_(Poly::zero()), den_(Poly::one()) {}
  explicit RationalFn(Poly num) : num_(std::move(num)), den_(Poly::one()) {}
  RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }
  explicit RationalFn(const Rational& c) : num_(Poly(c)), den_(Poly::one()) {}

  static RationalFn zero() { return RationalFn(); }
  static RationalFn one() { return RationalFn(Poly::one()); }
  static RationalFn var(const VariableId& v) { return RationalFn(Poly::var(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == Poly::one(); }

  // Sums go over the least common denominator: the stored denominators are
  // small (numerators carry the bulk), so their gcd is cheap, and the lcm
  // keeps repeated factors from piling up across long summations.
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    Poly g = gcd_poly(a.den_, b.den_);
    Poly bq = g == Poly::one() ? b.den_ : *b.den_.divided_exactly_by(g);
    Poly aq = g == Poly::one() ? a.den_ : *a.den_.divided_exactly_by(g);
    return RationalFn(a.num_ * bq + b.num_ * aq, a.den_ * bq);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ - b.num_, a.den_);
    Poly g = gcd_poly(a.den_, b.den_);
    Poly bq = g == Poly::one() ? b.den_ : *b.den_.divided_exactly_by(g);
    Poly aq = g == Poly::one() ? a.den_ : *a.den_.divided_exactly_by(g);
    return RationalFn(a.num_ * bq - b.num_ * aq, a.den_ * bq);
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFn operator-() const {
    RationalFn out = *this;
    out.num_ = -out.num_;
    return out;
  }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }

  RationalFn pow(int n) const {
    if (n < 0) return RationalFn::one() / pow(-n);
    RationalFn out = one(), base = *this;
    unsigned k = static_cast<unsigned>(n);
    while (k) {
      if (k & 1u) out *= base;
      base = (k >>= 1u) ? base * base : base;
    }
    return out;
  }

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Simultaneous variable renaming.  A renaming injective on the variables
  // actually used preserves coprimality, so only the monic normalization is
  // redone; otherwise the full normal form is recomputed.
  RationalFn relabeled(const std::map<VariableId, VariableId>& rep) const {
    bool injective = true;
    {
      std::set<VariableId> used = num_.variables();
      for (const auto& v : den_.variables()) used.insert(v);
      std::set<VariableId> images;
      for (const auto& v : used) {
        auto it = rep.find(v);
        if (!images.insert(it == rep.end() ? v : it->second).second) {
          injective = false;
          break;
        }
      }
    }
    if (!injective) return RationalFn(num_.relabeled(rep), den_.relabeled(rep));
    RationalFn out;
    out.num_ = num_.relabeled(rep);
    out.den_ = den_.relabeled(rep);
    out.rescale_monic();
    return out;
  }

  RationalFn substituted(const std::map<VariableId, Poly>& rep) const {
    return RationalFn(num_.substituted(rep), den_.substituted(rep));
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::one();
      return;
    }
    if (den_.is_constant()) {
      rescale_monic();
      return;
    }
    Poly g = gcd_poly(num_, den_);
    if (!(g == Poly::one())) {
      num_ = *num_.divided_exactly_by(g);
      den_ = *den_.divided_exactly_by(g);
    }
    rescale_monic();
  }

  void rescale_monic() {
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
      num_ /= lc;
      den_ /= lc;
    }
  }

  Poly num_, den_;
};

}  // namespace coha
