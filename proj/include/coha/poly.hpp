#pragma once
// Sparse multivariate polynomials over exact rationals.
//
// A monomial is a sorted vector of (variable, positive exponent) pairs; a
// polynomial maps monomials to nonzero rational coefficients.  Terms are
// kept in descending graded-lexicographic order (total degree first, ties by
// lex with earlier variables stronger), so begin() is the leading term and
// printing/iteration are canonical.  GCD is a primitive pseudo-remainder
// sequence over the recursively chosen last variable; exact division is
// leading-term reduction and reports failure instead of producing a
// remainder.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "variable.hpp"

namespace coha {

using Monomial = std::vector<std::pair<VariableId, int>>;  // sorted, exps > 0

inline int mono_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

// Lexicographic with smaller VariableId stronger: a variable a monomial has
// and the other lacks makes it the larger one.
inline std::strong_ordering mono_lex(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) return std::strong_ordering::greater;
    if (i == a.size()) return std::strong_ordering::less;
    if (a[i].first != b[j].first)
      return a[i].first < b[j].first ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
    if (a[i].second != b[j].second)
      return a[i].second > b[j].second ? std::strong_ordering::greater
                                       : std::strong_ordering::less;
    ++i, ++j;
  }
  return std::strong_ordering::equal;
}

inline std::strong_ordering mono_grlex(const Monomial& a, const Monomial& b) {
  if (int da = mono_degree(a), db = mono_degree(b); da != db)
    return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
  return mono_lex(a, b);
}

struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return mono_grlex(a, b) == std::strong_ordering::greater;
  }
};

struct MonoHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const auto& [v, e] : m) {
      mix(static_cast<std::size_t>(v.kind));
      for (unsigned char c : v.vertex) mix(c);
      mix(static_cast<std::size_t>(v.slot));
      mix(static_cast<std::size_t>(e));
    }
    return h;
  }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

// a / b when b divides a elementwise; nullopt otherwise.
inline std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [v, e] : b) {
    while (i < a.size() && a[i].first < v) out.push_back(a[i++]);
    if (i == a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(v, a[i].second - e);
    ++i;
  }
  while (i < a.size()) out.push_back(a[i++]);
  return out;
}

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, MonoGreater>;

  Poly() = default;
  explicit Poly(const Rational& c) {
    if (c != 0) terms_[{}] = c;
  }
  explicit Poly(long c) : Poly(Rational(c)) {}
  explicit Poly(const VariableId& v) { terms_[{{v, 1}}] = 1; }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Rational(1)); }
  static Poly var(const VariableId& v) { return Poly(v); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.begin()->first;
  }
  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.begin()->second;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;  // -1 for the zero polynomial
  }

  int degree_in(const VariableId& v) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
      for (const auto& [w, e] : m)
        if (w == v) d = std::max(d, e);
    return d;
  }

  std::set<VariableId> variables() const {
    std::set<VariableId> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [w, e] : m) out.insert(w);
    return out;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    const std::size_t na = a.terms_.size(), nb = b.terms_.size();
    if (na == 0 || nb == 0) return out;
    if (na * nb <= 4096) {
      for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
      return out;
    }
    // Large products: accumulate into a hash table (amortized O(1) per term
    // pair instead of an ordered insert) and order the result once.
    std::unordered_map<Monomial, Rational, MonoHash> acc;
    acc.reserve(std::min<std::size_t>(na * nb / 2, std::size_t{1} << 20));
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) acc[mono_mul(ma, mb)] += ca * cb;
    for (auto it = acc.begin(); it != acc.end();) {
      auto node = acc.extract(it++);
      if (node.mapped() != 0)
        out.terms_.emplace(std::move(node.key()), std::move(node.mapped()));
    }
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, k] : terms_) k *= c;
    }
    return *this;
  }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  Poly& operator/=(const Rational& c) {
    if (c == 0) throw std::invalid_argument("division by zero rational");
    for (auto& [m, k] : terms_) k /= c;
    return *this;
  }

  Poly pow(unsigned n) const {
    Poly out = one(), base = *this;
    while (n) {
      if (n & 1u) out *= base;
      base = (n >>= 1u) ? base * base : base;
    }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  // Simultaneous variable renaming.  Non-injective maps are allowed; merged
  // exponents accumulate.
  Poly relabeled(const std::map<VariableId, VariableId>& rep) const {
    Poly out;
    std::vector<std::pair<VariableId, int>> buf;
    for (const auto& [m, c] : terms_) {
      buf.assign(m.begin(), m.end());
      for (auto& [v, e] : buf)
        if (auto it = rep.find(v); it != rep.end()) v = it->second;
      std::sort(buf.begin(), buf.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      Monomial nm;
      nm.reserve(buf.size());
      for (auto& p : buf)
        if (!nm.empty() && nm.back().first == p.first)
          nm.back().second += p.second;
        else
          nm.push_back(std::move(p));
      out.add_term(nm, c);
    }
    return out;
  }

  // Substitute whole polynomials for variables (simultaneous).
  Poly substituted(const std::map<VariableId, Poly>& rep) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      Poly term(c);
      for (const auto& [v, e] : m) {
        auto it = rep.find(v);
        term *= (it == rep.end() ? Poly(v) : it->second).pow(static_cast<unsigned>(e));
      }
      out += term;
    }
    return out;
  }

  // Exact multivariate division; nullopt when the division leaves a remainder.
  std::optional<Poly> divided_exactly_by(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (d.is_constant()) {
      Poly q = *this;
      q /= d.constant_value();
      return q;
    }
    Poly q, r = *this;
    const Monomial& dm = d.leading_monomial();
    const Rational& dc = d.leading_coefficient();
    while (!r.is_zero()) {
      auto quot = mono_div(r.leading_monomial(), dm);
      if (!quot) return std::nullopt;
      Rational c = r.leading_coefficient() / dc;
      Poly t;
      t.terms_.emplace(*quot, c);
      q += t;
      r -= t * d;
    }
    return q;
  }

  std::string str() const;

 private:
  TermMap terms_;
};

inline std::string mono_str(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m) {
    if (!out.empty()) out += "*";
    out += v.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    if (m.empty()) {
      out += to_string(a);
    } else if (a == 1) {
      out += mono_str(m);
    } else {
      out += to_string(a) + "*" + mono_str(m);
    }
  }
  return out;
}

// --- GCD (primitive pseudo-remainder sequence) ----------------------------

// Leading coefficient 1 under the fixed monomial order.
inline Poly monic(const Poly& f) {
  if (f.is_zero()) return f;
  Poly out = f;
  out /= f.leading_coefficient();
  return out;
}

inline int poly_degree_in(const Poly& f, const VariableId& x) { return f.degree_in(x); }

// Coefficient of x^k, a polynomial in the remaining variables.
inline Poly coeff_in(const Poly& f, const VariableId& x, int k) {
  Poly out;
  for (const auto& [m, c] : f.terms()) {
    int e = 0;
    Monomial rest;
    for (const auto& [v, d] : m) {
      if (v == x)
        e = d;
      else
        rest.emplace_back(v, d);
    }
    if (e == k) out.add_term(rest, c);
  }
  return out;
}

Poly gcd_poly(const Poly& a, const Poly& b);

// gcd of the x-coefficients; the "content" of f viewed in (R[rest])[x].
inline Poly content_in(const Poly& f, const VariableId& x) {
  Poly g;
  for (int k = 0; k <= poly_degree_in(f, x); ++k) {
    Poly c = coeff_in(f, x, k);
    if (!c.is_zero()) g = g.is_zero() ? monic(c) : gcd_poly(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly::one();
  }
  return g;
}

// Pseudo-remainder of f by g in the variable x (deg_x g >= 1).
inline Poly prem(Poly f, const Poly& g, const VariableId& x) {
  const int dg = poly_degree_in(g, x);
  const Poly lcg = coeff_in(g, x, dg);
  Poly xv = Poly::var(x);
  int df = poly_degree_in(f, x);
  while (!f.is_zero() && df >= dg) {
    Poly lcf = coeff_in(f, x, df);
    f = lcg * f - lcf * xv.pow(static_cast<unsigned>(df - dg)) * g;
    int ndf = poly_degree_in(f, x);
    if (!f.is_zero() && ndf >= df)
      throw std::logic_error("pseudo-remainder failed to reduce degree");
    df = ndf;
  }
  return f;
}

// Rescale so coefficients are coprime integers with positive leading sign.
// A unit multiple, so harmless inside gcd computations.
inline Poly primitive_rational(const Poly& f) {
  if (f.is_zero()) return f;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  Poly out = f;
  out *= (f.leading_coefficient() < 0 ? -scale : scale);
  return out;
}

namespace detail {

// The univariate image of f in x with every other variable sent to its value
// in `at`; coefficients indexed by the x-exponent.
inline std::vector<Rational> univariate_image(const Poly& f, const VariableId& x,
                                              const std::map<VariableId, long>& at) {
  std::vector<Rational> out(static_cast<std::size_t>(f.degree_in(x)) + 1);
  for (const auto& [m, c] : f.terms()) {
    int xexp = 0;
    Rational val = c;
    for (const auto& [v, e] : m) {
      if (v == x) {
        xexp = e;
        continue;
      }
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(at.at(v)),
                    static_cast<unsigned long>(e));
      val *= Rational(p);
    }
    out[static_cast<std::size_t>(xexp)] += val;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

inline int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  auto trim = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Remainder of a by b with b made monic first.
    const Rational lead = b.back();
    if (lead != 1)
      for (auto& c : b) c /= lead;
    while (a.size() >= b.size()) {
      const Rational q = a.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// True when gcd(u, v) certainly has x-degree zero: a specialization of the
// other variables can only enlarge the gcd's x-degree as long as neither
// leading x-coefficient vanishes, so a constant univariate gcd is a proof.
// False means "inconclusive".
inline bool evaluation_probe_coprime(const Poly& u, const Poly& v, const VariableId& x) {
  static const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
  constexpr std::size_t kCount = sizeof(kPrimes) / sizeof(kPrimes[0]);
  std::set<VariableId> vars = u.variables();
  for (const auto& w : v.variables()) vars.insert(w);
  vars.erase(x);
  if (vars.size() > kCount) return false;
  const int du = u.degree_in(x), dv = v.degree_in(x);
  for (std::size_t attempt = 0; attempt < 3; ++attempt) {
    std::map<VariableId, long> at;
    std::size_t i = 0;
    for (const auto& w : vars) at[w] = kPrimes[(i++ + 5 * attempt) % kCount];
    std::vector<Rational> iu = univariate_image(u, x, at);
    std::vector<Rational> iv = univariate_image(v, x, at);
    // A dropped leading term voids the bound; try another point.
    if (static_cast<int>(iu.size()) - 1 != du || static_cast<int>(iv.size()) - 1 != dv)
      continue;
    if (univariate_gcd_degree(std::move(iu), std::move(iv)) == 0) return true;
  }
  return false;
}

inline mpz_class max_abs_numerator(const Poly& f) {
  mpz_class m = 0;
  for (const auto& [mono, c] : f.terms()) {
    mpz_class v = abs(c.get_num());
    if (v > m) m = v;
  }
  return m;
}

// Substitute the integer xi for x.  Integer coefficients stay integer.
inline Poly eval_var_at(const Poly& f, const VariableId& x, const mpz_class& xi) {
  Poly out;
  for (const auto& [m, c] : f.terms()) {
    Monomial rest;
    int e = 0;
    for (const auto& [v, d] : m) {
      if (v == x)
        e = d;
      else
        rest.emplace_back(v, d);
    }
    if (e == 0) {
      out.add_term(rest, c);
    } else {
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(e));
      out.add_term(rest, c * Rational(p));
    }
  }
  return out;
}

// Representative of c modulo m in the balanced range (-m/2, m/2].
inline mpz_class balanced_mod(const mpz_class& c, const mpz_class& m) {
  mpz_class r = c % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

// Heuristic gcd by integer evaluation: substitute a large integer for one
// variable, take the gcd of the images one variable down, and read the
// candidate's coefficients back off as balanced base-xi digits.  Both inputs
// must have integer coefficients.  A non-constant return value is verified by
// exact division, so it is a genuine common divisor (possibly partial).  A
// constant return value only reports coprime images — heuristic evidence, not
// a proof — and nullopt means the heuristic could not settle the question.
inline std::optional<Poly> gcdheu(const Poly& a, const Poly& b, int depth) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) {
    mpz_class g = 0;
    for (const auto& [m, c] : a.terms())
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    for (const auto& [m, c] : b.terms())
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    Poly out;
    out.add_term({}, Rational(g));
    return out;
  }
  if (depth > 24) return std::nullopt;

  // Prefer a variable both sides contain; its image gcd loses no structure.
  std::set<VariableId> vars = a.variables();
  for (const auto& w : b.variables()) vars.insert(w);
  VariableId x = *vars.begin();
  for (const auto& w : vars)
    if (a.degree_in(w) > 0 && b.degree_in(w) > 0) {
      x = w;
      break;
    }
  const int da = a.degree_in(x), db = b.degree_in(x);
  const int dx = std::min(da, db);

  mpz_class na = max_abs_numerator(a), nb = max_abs_numerator(b);
  mpz_class xi = 2 * (na < nb ? na : nb) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (attempt) xi = xi * 73794 / 27011;
    std::optional<Poly> rec =
        gcdheu(eval_var_at(a, x, xi), eval_var_at(b, x, xi), depth + 1);
    if (!rec) continue;
    // Base-xi digits of the image gcd are the candidate's x-coefficients.
    Poly g, gamma = *rec;
    bool fits = true;
    for (int k = 0; !gamma.is_zero(); ++k) {
      if (k > dx) {
        fits = false;
        break;
      }
      Poly digit, next;
      for (const auto& [m, c] : gamma.terms()) {
        mpz_class d = balanced_mod(c.get_num(), xi);
        if (d != 0) digit.add_term(m, Rational(d));
        mpz_class q = (c.get_num() - d) / xi;
        if (q != 0) next.add_term(m, Rational(q));
      }
      if (!digit.is_zero()) g += digit * Poly::var(x).pow(static_cast<unsigned>(k));
      gamma = next;
    }
    if (!fits || g.is_zero()) continue;
    // Return the candidate unnormalized: a constant's integer value encodes
    // the next level's digits, and rational division absorbs any integer
    // content a non-constant candidate carries.
    if (g.is_constant()) return g;
    if (a.divided_exactly_by(g).has_value() && b.divided_exactly_by(g).has_value())
      return g;
  }
  return std::nullopt;
}

}  // namespace detail

inline Poly gcd_poly(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::one();

  const auto va = a.variables(), vb = b.variables();
  std::vector<VariableId> shared;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::back_inserter(shared));
  // Disjoint variable sets admit only constant common divisors.
  if (shared.empty()) return Poly::one();

  // One side dividing the other IS the gcd; it is also the dominant case when
  // clearing denominators, so catch it before any elimination work.
  if (a.divided_exactly_by(b).has_value()) return monic(b);
  if (b.divided_exactly_by(a).has_value()) return monic(a);

  // A divisor of both uses only shared variables, so certifying the gcd's
  // degree to zero in each shared variable certifies a constant gcd.  This
  // front door skips the recursive content machinery entirely in the common
  // coprime case.
  bool certified_constant = true;
  for (const auto& w : shared)
    if (!detail::evaluation_probe_coprime(a, b, w)) {
      certified_constant = false;
      break;
    }
  if (certified_constant) return Poly::one();

  // A non-constant heuristic hit is verified by division, so stripping it and
  // recursing yields the full gcd no matter how lucky the evaluation was.  The
  // quotients are usually coprime and certified as such by the probe above.
  {
    Poly ia = primitive_rational(a), ib = primitive_rational(b);
    std::optional<Poly> h = detail::gcdheu(ia, ib, 0);
    if (h && !h->is_constant())
      return monic(*h * gcd_poly(*ia.divided_exactly_by(*h),
                                 *ib.divided_exactly_by(*h)));
  }

  // Eliminate the shared variable of least degree to keep the remainder
  // sequence shallow.
  VariableId x = shared.front();
  int best = std::max(a.degree_in(x), b.degree_in(x));
  for (const auto& w : shared) {
    int d = std::max(a.degree_in(w), b.degree_in(w));
    if (d < best) {
      best = d;
      x = w;
    }
  }

  Poly ca = content_in(a, x), cb = content_in(b, x);
  Poly c = gcd_poly(ca, cb);
  Poly u = primitive_rational(*a.divided_exactly_by(ca));
  Poly v = primitive_rational(*b.divided_exactly_by(cb));
  if (poly_degree_in(u, x) < poly_degree_in(v, x)) std::swap(u, v);
  // Certified-coprime primitive parts leave only the content gcd.
  if (detail::evaluation_probe_coprime(u, v, x)) return monic(c);
  while (!v.is_zero()) {
    Poly r = prem(u, v, x);
    u = v;
    if (r.is_zero()) {
      v = Poly::zero();
    } else {
      r = primitive_rational(r);
      Poly cr = content_in(r, x);
      v = primitive_rational(*r.divided_exactly_by(cr));
    }
  }
  return monic(c * u);
}

}  // namespace coha
