#pragma once
// Formal group law descriptor.  Products are parameterized by a law so other
// laws can slot in later; only the additive law is provided, and it is the
// only one any verification claims cover.

#include <stdexcept>
#include <string>

#include "rational_fn.hpp"

namespace coha {

class FormalGroupLaw {
 public:
  static FormalGroupLaw additive() { return FormalGroupLaw("additive"); }

  // Rejects unknown law names.
  static FormalGroupLaw from_name(const std::string& name) {
    if (name == "additive") return additive();
    throw std::invalid_argument("unknown formal group law: " + name);
  }

  const std::string& name() const { return name_; }

  RationalFn add(const RationalFn& x, const RationalFn& y) const { return x + y; }
  RationalFn neg(const RationalFn& x) const { return -x; }

  // m-fold formal sum of x with itself (m may be negative: msum(-m, x) =
  // neg(msum(m, x))).
  RationalFn msum(long m, const RationalFn& x) const {
    return x * RationalFn(Rational(m));
  }

  // Polynomial fast paths (exact for the additive law).
  Poly add(const Poly& x, const Poly& y) const { return x + y; }
  Poly neg(const Poly& x) const { return -x; }
  Poly msum(long m, const Poly& x) const { return x * Rational(m); }

 private:
  explicit FormalGroupLaw(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

}  // namespace coha
