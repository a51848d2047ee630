#pragma once
// Shuffle-algebra products.  An element of degree v is a rational function in
// the per-vertex variables l[i,1..v^i] (plus t1, t2), symmetric or skew per
// vertex.  Products symmetrize f1 * shifted(f2) * kernel over shuffle coset
// representatives.
//
// Evaluation strategies for the symmetrized sums with kernel denominators:
//
//  * Reference strategy (shuffle_sum_over_cross): every summand's denominator
//    is the sigma-image of the fixed cross-block product prod (l_j - l_i), so
//    all summands are put over the full per-vertex Vandermonde, numerators
//    are summed, and the common denominator is divided out exactly at the
//    end.  Where polynomiality is contractual, a residual denominator is a
//    hard error, never silently kept.
//
//  * Product strategy (demazure_shuffle_sum): the same sum evaluated as a
//    composition of divided-difference operators, one per cross pair.  Each
//    step divides exactly term by term, so it never forms the large common
//    numerator; it agrees with the reference strategy whenever the input is
//    symmetric within each block, which holds for every product kernel by
//    construction.  Small-variable cases additionally run on the packed
//    fixed-lane representation (packed_poly.hpp).

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dim_vector.hpp"
#include "fgl.hpp"
#include "packed_poly.hpp"
#include "permutation.hpp"
#include "poly.hpp"
#include "quiver.hpp"
#include "rational_fn.hpp"

namespace coha {

// A symmetrized sum that was contracted to clear its denominator did not.
struct ResidualDenominatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An element (or input expression) fails its per-vertex (skew-)symmetry.
struct SymmetryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoopWeight {
  int c1 = -1;
  int c2 = -1;
};

struct ShuffleElement {
  DimVector v;
  RationalFn f;
  Flavor flavor = Flavor::symmetric;
};

inline ShuffleElement unit_element(Flavor flavor = Flavor::symmetric) {
  return {DimVector{}, RationalFn::one(), flavor};
}

// Throws SymmetryError (bad symmetry) or std::domain_error (slot out of range).
inline void validate_element(const ShuffleElement& x) {
  if (!symmetry_check(x.f, x.v, x.flavor))
    throw SymmetryError(std::string("element of degree ") + x.v.str() + " is not " +
                        (x.flavor == Flavor::symmetric ? "symmetric" : "skew") +
                        " per vertex");
}

// --- second-factor embedding: l[i,t] -> l[i, t + v1^i] ---------------------

inline std::map<VariableId, VariableId> embedding_map(const std::set<VariableId>& used,
                                                      const DimVector& v1) {
  std::map<VariableId, VariableId> rep;
  for (const auto& w : used) {
    if (!w.is_lambda()) continue;
    int off = v1.at(w.vertex);
    if (off != 0) rep[w] = VariableId::lam(w.vertex, w.slot + off);
  }
  return rep;
}

inline Poly embed_second(const Poly& f, const DimVector& v1) {
  return f.relabeled(embedding_map(f.variables(), v1));
}

inline RationalFn embed_second(const RationalFn& f, const DimVector& v1) {
  std::set<VariableId> used = f.num().variables();
  for (const auto& w : f.den().variables()) used.insert(w);
  return f.relabeled(embedding_map(used, v1));
}

// --- kernel factors ---------------------------------------------------------

namespace detail {

inline Poly lam(const std::string& vertex, int slot) {
  return Poly::var(VariableId::lam(vertex, slot));
}

inline Poly lambda_diff(const std::string& vertex, int hi, int lo) {
  return lam(vertex, hi) - lam(vertex, lo);
}

// Cross-block slot pairs (lo in block 1, hi in embedded block 2), per vertex.
struct CrossPair {
  std::string vertex;
  int lo;  // slot in 1..v1^vertex
  int hi;  // slot in v1^vertex+1 .. v1^vertex+v2^vertex
};

inline std::vector<CrossPair> cross_pairs(const DimVector& v1, const DimVector& v2) {
  std::vector<CrossPair> out;
  for (const auto& [vertex, n2] : v2.counts()) {
    int n1 = v1.at(vertex);
    for (int s = 1; s <= n1; ++s)
      for (int t = 1; t <= n2; ++t) out.push_back({vertex, s, n1 + t});
  }
  return out;
}

}  // namespace detail

// e(iota) = prod over vertices i, s <= v1^i, t <= v2^i of
// (l[i,s] - l[i, t+v1^i] + t1 + t2), in embedded variables.
inline Poly euler_iota(const DimVector& v1, const DimVector& v2) {
  Poly tt = Poly::var(VariableId::t1()) + Poly::var(VariableId::t2());
  Poly out = Poly::one();
  for (const auto& p : detail::cross_pairs(v1, v2))
    out *= detail::lam(p.vertex, p.lo) - detail::lam(p.vertex, p.hi) + tt;
  return out;
}

// e(gamma) = prod of (l[i, t+v1^i] - l[i,s] + c1*t1 + c2*t2); weight (-1,-1)
// gives (-1)^{v1.v2} e(iota), weight (0,0) the plain cross difference product.
inline Poly euler_gamma(const DimVector& v1, const DimVector& v2, LoopWeight w = {}) {
  Poly shift = Poly(Rational(w.c1)) * Poly::var(VariableId::t1()) +
               Poly(Rational(w.c2)) * Poly::var(VariableId::t2());
  Poly out = Poly::one();
  for (const auto& p : detail::cross_pairs(v1, v2))
    out *= detail::lam(p.vertex, p.hi) - detail::lam(p.vertex, p.lo) + shift;
  return out;
}

// e(n_v) = prod over vertices i, pairs a < b <= v^i of (l[i,b] -_F l[i,a]).
inline Poly vandermonde(const DimVector& v, const FormalGroupLaw& F) {
  Poly out = Poly::one();
  for (const auto& [vertex, n] : v.counts())
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        out *= F.add(detail::lam(vertex, b), F.neg(detail::lam(vertex, a)));
  return out;
}

// Numerator of fac1: prod of (l' -_F l'' +_F t1 +_F t2) over cross pairs.
inline Poly fac1_numerator(const DimVector& v1, const DimVector& v2,
                           const FormalGroupLaw& F) {
  Poly t1 = Poly::var(VariableId::t1()), t2 = Poly::var(VariableId::t2());
  Poly out = Poly::one();
  for (const auto& p : detail::cross_pairs(v1, v2))
    out *= F.add(F.add(F.add(detail::lam(p.vertex, p.lo),
                             F.neg(detail::lam(p.vertex, p.hi))),
                       t1),
                 t2);
  return out;
}

// fac1 = prod of (l' -_F l'' +_F t1 +_F t2) / (l'' -_F l') over cross pairs.
inline RationalFn fac1(const DimVector& v1, const DimVector& v2,
                       const FormalGroupLaw& F) {
  Poly den = Poly::one();
  for (const auto& p : detail::cross_pairs(v1, v2))
    den *= F.add(detail::lam(p.vertex, p.hi), F.neg(detail::lam(p.vertex, p.lo)));
  return RationalFn(fac1_numerator(v1, v2, F), den);
}

// fac2 = prod over all arrows b of the double quiver, s <= v1^{src(b)},
// t <= v2^{tgt(b)}, of (l[tgt(b), t+v1] -_F l[src(b), s] +_F w1*t1 +_F w2*t2).
// For a doubled pair a:(m,0), a*:(0,m) this is exactly the two-sided kernel
// product.  Requires a valid double quiver (throws std::domain_error).
inline Poly fac2(const Quiver& q, const DimVector& v1, const DimVector& v2,
                 const FormalGroupLaw& F) {
  double_pairs(q);  // validates pairing and weight shape
  Poly t1 = Poly::var(VariableId::t1()), t2 = Poly::var(VariableId::t2());
  Poly out = Poly::one();
  for (const auto& b : q.arrows()) {
    int n1 = v1.at(b.src), n2 = v2.at(b.tgt), off = v1.at(b.tgt);
    for (int s = 1; s <= n1; ++s)
      for (int t = 1; t <= n2; ++t)
        out *= F.add(F.add(F.add(detail::lam(b.tgt, t + off),
                                 F.neg(detail::lam(b.src, s))),
                           F.msum(b.w1, t1)),
                     F.msum(b.w2, t2));
  }
  return out;
}

// --- the symmetrized-sum engine ---------------------------------------------

namespace detail {

inline std::map<VariableId, VariableId> sigma_relabel(const VertexPermutation& sigma) {
  std::map<VariableId, VariableId> rep;
  for (const auto& [vertex, img] : sigma.images)
    for (int s = 1; s <= static_cast<int>(img.size()); ++s)
      if (img[static_cast<std::size_t>(s - 1)] != s)
        rep[VariableId::lam(vertex, s)] =
            VariableId::lam(vertex, img[static_cast<std::size_t>(s - 1)]);
  return rep;
}

// Divided difference in two variables of one vertex:
//   (f - f|swap(lo,hi)) / (l_hi - l_lo),
// computed term by term, so the division is exact by construction for every
// input.  A term c*rest*hi^a*lo^b with a > b contributes
//   c*rest*(hi*lo)^b * (hi^{a-b-1} + hi^{a-b-2}*lo + ... + lo^{a-b-1}),
// a < b the negation with roles swapped, and a == b nothing.
inline Poly demazure_step(const Poly& f, const VariableId& lo, const VariableId& hi) {
  Poly out;
  for (const auto& [m, c] : f.terms()) {
    int a = 0, b = 0;
    Monomial rest;
    rest.reserve(m.size());
    for (const auto& [v, e] : m) {
      if (v == hi)
        a = e;
      else if (v == lo)
        b = e;
      else
        rest.push_back({v, e});
    }
    if (a == b) continue;
    const int low = std::min(a, b), d = std::max(a, b) - low;
    const Rational cc = a > b ? c : -c;
    for (int j = 0; j < d; ++j) {
      Monomial extra;
      if (low + j > 0) extra.emplace_back(lo, low + j);
      if (low + d - 1 - j > 0) extra.emplace_back(hi, low + d - 1 - j);
      out.add_term(mono_mul(rest, extra), cc);
    }
  }
  return out;
}

// Evaluates the same symmetrized sum as shuffle_sum_over_cross, but as a
// composition of divided-difference operators (one per cross pair) instead of
// assembling a common-denominator numerator.  Each operator step is exact for
// any input; the composite agrees with the shuffle sum exactly when P is
// symmetric within each block (slots 1..v1 and v1+1..v1+v2 per vertex), which
// every product kernel is by construction.  On inputs violating that
// precondition the two evaluations may differ, so validation stays with the
// callers that accept external data.
inline Poly demazure_shuffle_sum(Poly P, const DimVector& v1, const DimVector& v2) {
  for (const auto& [vertex, s] : v2.counts()) {
    const int r = v1.at(vertex);
    if (r <= 0 || s <= 0) continue;
    for (int i = r; i >= 1; --i)
      for (int j = i; j <= i + s - 1; ++j)
        P = demazure_step(P, VariableId::lam(vertex, j), VariableId::lam(vertex, j + 1));
  }
  return P;
}

// Exact polynomial value of  sum over shuffles sigma of sigma(P / D_cross),
// with D_cross = prod over cross pairs (l_hi - l_lo).  Every sigma-image of
// D_cross divides the per-vertex full Vandermonde on the vertices where cross
// pairs exist, so the sum is assembled over that common denominator and
// divided out exactly.  Throws ResidualDenominatorError if it does not clear.
inline Poly shuffle_sum_over_cross(const Poly& P, const DimVector& v1,
                                   const DimVector& v2) {
  const DimVector total = v1 + v2;
  const auto cross = cross_pairs(v1, v2);

  std::vector<std::string> active;  // vertices contributing denominator factors
  for (const auto& [vertex, n2] : v2.counts())
    if (v1.at(vertex) > 0) active.push_back(vertex);

  Poly numerator;
  for (const auto& sigma : enumerate_shuffles(v1, v2)) {
    Poly img = P.relabeled(sigma_relabel(sigma));
    int orient = 1;
    std::map<std::string, std::set<std::pair<int, int>>> hit;
    for (const auto& p : cross) {
      int a = sigma.apply_slot(p.vertex, p.lo), b = sigma.apply_slot(p.vertex, p.hi);
      if (a > b) {
        std::swap(a, b);
        orient = -orient;
      }
      hit[p.vertex].insert({a, b});
    }
    Poly comp = Poly::one();
    for (const auto& vertex : active) {
      const auto& done = hit[vertex];
      int n = total.at(vertex);
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          if (!done.count({a, b})) comp *= lambda_diff(vertex, b, a);
    }
    comp *= img;
    numerator += orient < 0 ? -comp : comp;
  }

  Poly result = std::move(numerator);
  for (const auto& vertex : active) {
    int n = total.at(vertex);
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        auto q = result.divided_exactly_by(lambda_diff(vertex, b, a));
        if (!q)
          throw ResidualDenominatorError(
              "shuffle sum did not clear its denominator factor (l[" + vertex + "," +
              std::to_string(b) + "] - l[" + vertex + "," + std::to_string(a) + "])");
        result = std::move(*q);
      }
  }
  return result;
}

// sum over shuffles of sign(sigma) * sigma(P); denominator-free.
inline Poly signed_shuffle_sum(const Poly& P, const DimVector& v1, const DimVector& v2) {
  Poly out;
  for (const auto& sigma : enumerate_shuffles(v1, v2)) {
    Poly img = P.relabeled(sigma_relabel(sigma));
    out += sigma.sign < 0 ? -img : img;
  }
  return out;
}

// General rational-function fallback: sum of (sign?) sigma(K).
inline RationalFn shuffle_sum_rational(const RationalFn& K, const DimVector& v1,
                                       const DimVector& v2, bool use_sign) {
  RationalFn out;
  for (const auto& sigma : enumerate_shuffles(v1, v2)) {
    RationalFn img = apply_permutation(K, sigma);
    out += (use_sign && sigma.sign < 0) ? -img : img;
  }
  return out;
}

// A cached product kernel: the expanded polynomial plus, filled lazily, its
// packed encoding under the lane table it was last used with.
struct KernelEntry {
  Poly poly;
  std::vector<VariableId> packed_vars;
  std::optional<PackedPoly> packed;
};

// Whole-pipeline packed evaluation of a product sum: multiplies
// f1 * f2_embedded * kernel and applies either the signed shuffle sum or the
// divided-difference chain, all on the fixed-lane representation.  Returns
// nullopt when the computation does not fit eight one-byte integer lanes;
// callers then rerun the generic path.
inline std::optional<Poly> packed_product_sum(const Poly& f1, const Poly& f2e,
                                              KernelEntry& kernel, const DimVector& v1,
                                              const DimVector& v2, bool sign_twisted) {
  const DimVector total = v1 + v2;
  const Poly& kpoly = kernel.poly;
  std::vector<VariableId> vars{VariableId::t1(), VariableId::t2()};
  for (const auto& [vertex, n] : total.counts())
    for (int s = 1; s <= n; ++s) vars.push_back(VariableId::lam(vertex, s));
  for (const Poly* p : {&f1, &f2e, &kpoly})
    for (const auto& v : p->variables()) vars.push_back(v);

  auto table = PackedTable::build(std::move(vars));
  if (!table || !table->can_encode(f1) || !table->can_encode(f2e) ||
      !table->can_encode(kernel.poly))
    return std::nullopt;

  PackedPoly a = table->encode(f1), b = table->encode(f2e);
  if (!packed_mul_fits(a, b)) return std::nullopt;
  PackedPoly fp = packed_mul(a, b);

  const PackedPoly* k = nullptr;
  PackedPoly k_local;
  if (kernel.packed && kernel.packed_vars == table->vars()) {
    k = &*kernel.packed;
  } else {
    k_local = table->encode(kernel.poly);
    if (!kernel.packed) {
      kernel.packed_vars = table->vars();
      kernel.packed = k_local;
    }
    k = &k_local;
  }
  if (!packed_mul_fits(fp, *k)) return std::nullopt;
  PackedPoly P = packed_mul(fp, *k);

  if (sign_twisted) {
    PackedPoly acc;
    for (const auto& sigma : enumerate_shuffles(v1, v2)) {
      std::array<int, kPackedLanes> perm;
      for (int i = 0; i < kPackedLanes; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (const auto& [vertex, img] : sigma.images)
        for (int s = 1; s <= static_cast<int>(img.size()); ++s) {
          int from = table->lane_of(VariableId::lam(vertex, s));
          int to = table->lane_of(
              VariableId::lam(vertex, img[static_cast<std::size_t>(s - 1)]));
          perm[static_cast<std::size_t>(from)] = to;
        }
      for (const auto& [key, c] : P.terms) {
        if (c == 0) continue;
        auto& slot = acc.terms[permute_lanes(key, perm)];
        if (sigma.sign < 0)
          slot -= c;
        else
          slot += c;
      }
    }
    return table->decode(acc);
  }

  for (const auto& [vertex, s2] : v2.counts()) {
    const int r = v1.at(vertex);
    if (r <= 0 || s2 <= 0) continue;
    for (int i = r; i >= 1; --i)
      for (int j = i; j <= i + s2 - 1; ++j)
        P = packed_demazure_step(P, table->lane_of(VariableId::lam(vertex, j)),
                                 table->lane_of(VariableId::lam(vertex, j + 1)));
  }
  return table->decode(P);
}

enum class ProductKind { preprojective, aux, critical, sign_twisted };

// The input-independent part of a product kernel (fac1 numerator, fac2, and
// the auxiliary Euler factor when present) depends only on the quiver, the
// group law, the degrees, and the loop weight, so repeated products in a
// verification sweep reuse it instead of re-expanding the factor product.
inline KernelEntry& cached_kernel(const Quiver& q, const FormalGroupLaw& F,
                                  const DimVector& v1, const DimVector& v2, bool aux,
                                  LoopWeight w) {
  static thread_local std::map<std::string, KernelEntry> cache;
  std::string key = F.name();
  for (const auto& a : q.arrows())
    key += "|" + a.src + ">" + a.tgt + ":" + std::to_string(a.w1) + "," +
           std::to_string(a.w2);
  key += "#" + v1.str() + "#" + v2.str();
  if (aux) key += "@" + std::to_string(w.c1) + "," + std::to_string(w.c2);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Poly k = fac1_numerator(v1, v2, F) * fac2(q, v1, v2, F);
    if (aux) k *= euler_gamma(v1, v2, w);
    if (cache.size() >= 256) cache.clear();
    it = cache.emplace(std::move(key), KernelEntry{std::move(k), {}, std::nullopt}).first;
  }
  return it->second;
}

inline ShuffleElement shuffle_product(const ShuffleElement& x, const ShuffleElement& y,
                                      const Quiver& q, const FormalGroupLaw& F,
                                      ProductKind kind, LoopWeight w = {}) {
  const Flavor need =
      kind == ProductKind::sign_twisted ? Flavor::skew : Flavor::symmetric;
  if (x.flavor != need || y.flavor != need)
    throw std::invalid_argument("flavor mismatch: product requires both factors " +
                                std::string(need == Flavor::skew ? "skew" : "symmetric"));

  const DimVector& v1 = x.v;
  const DimVector& v2 = y.v;
  Rational global(1);
  if (kind == ProductKind::critical && dot(v1, v2) % 2 != 0) global = -1;

  const bool fast = F.name() == "additive" && x.f.is_polynomial() && y.f.is_polynomial();
  RationalFn value;
  if (fast) {
    const Poly& f1 = x.f.num();
    Poly f2e = embed_second(y.f.num(), v1);
    KernelEntry& kernel = cached_kernel(q, F, v1, v2, kind == ProductKind::aux, w);
    Poly sum;
    if (auto packed = detail::packed_product_sum(f1, f2e, kernel, v1, v2,
                                                 kind == ProductKind::sign_twisted)) {
      sum = std::move(*packed);
    } else {
      Poly P = f1 * f2e * kernel.poly;
      sum = kind == ProductKind::sign_twisted
                ? detail::signed_shuffle_sum(P, v1, v2)
                : detail::demazure_shuffle_sum(std::move(P), v1, v2);
    }
    value = RationalFn(sum * global);
  } else {
    RationalFn K = x.f * embed_second(y.f, v1) * fac1(v1, v2, F) *
                   RationalFn(fac2(q, v1, v2, F));
    if (kind == ProductKind::aux) K *= RationalFn(euler_gamma(v1, v2, w));
    if (kind == ProductKind::sign_twisted) {
      Poly cross_product = Poly::one();
      for (const auto& p : cross_pairs(v1, v2))
        cross_product *= lambda_diff(p.vertex, p.hi, p.lo);
      K *= RationalFn(cross_product);
    }
    value = shuffle_sum_rational(K, v1, v2, kind == ProductKind::sign_twisted) *
            RationalFn(global);
  }
  return {v1 + v2, std::move(value), need};
}

}  // namespace detail

// --- the four products ------------------------------------------------------

inline ShuffleElement mul_preprojective(const ShuffleElement& x, const ShuffleElement& y,
                                        const Quiver& q, const FormalGroupLaw& F) {
  return detail::shuffle_product(x, y, q, F, detail::ProductKind::preprojective);
}

inline ShuffleElement mul_aux(const ShuffleElement& x, const ShuffleElement& y,
                              const Quiver& q, const FormalGroupLaw& F,
                              LoopWeight w = {}) {
  return detail::shuffle_product(x, y, q, F, detail::ProductKind::aux, w);
}

inline ShuffleElement mul_critical(const ShuffleElement& x, const ShuffleElement& y,
                                   const Quiver& q, const FormalGroupLaw& F) {
  return detail::shuffle_product(x, y, q, F, detail::ProductKind::critical);
}

inline ShuffleElement mul_sign_twisted(const ShuffleElement& x, const ShuffleElement& y,
                                       const Quiver& q, const FormalGroupLaw& F) {
  return detail::shuffle_product(x, y, q, F, detail::ProductKind::sign_twisted);
}

// --- comparison maps --------------------------------------------------------

// f -> f * prod_i (-1)^{C(v^i,2)}; symmetric -> symmetric.
inline ShuffleElement xi_critical(const ShuffleElement& x) {
  if (x.flavor != Flavor::symmetric)
    throw std::invalid_argument("xi_critical expects a symmetric element");
  long exponent = 0;
  for (const auto& [vertex, n] : x.v.counts())
    exponent += static_cast<long>(n) * (n - 1) / 2;
  ShuffleElement out = x;
  if (exponent % 2 != 0) out.f = -out.f;
  return out;
}

// f -> f * e(n_v); symmetric -> skew.
inline ShuffleElement xi_sign(const ShuffleElement& x, const FormalGroupLaw& F) {
  if (x.flavor != Flavor::symmetric)
    throw std::invalid_argument("xi_sign expects a symmetric element");
  return {x.v, x.f * RationalFn(vandermonde(x.v, F)), Flavor::skew};
}

// --- pushforwards (single abstract vertex) ----------------------------------

namespace detail {

inline void check_block_symmetry(const RationalFn& f, int r, int n,
                                 const std::string& vertex, Flavor mode) {
  DimVector v;
  v.set(vertex, n);
  std::set<VariableId> used = f.num().variables();
  for (const auto& w : f.den().variables()) used.insert(w);
  for (const auto& w : used)
    if (w.is_lambda() && w.vertex == vertex && w.slot > n)
      throw std::domain_error("lambda slot exceeds n: " + w.name());
  for (int s = 1; s < n; ++s) {
    if (s == r) continue;  // transposition across the block boundary
    VertexPermutation tau = VertexPermutation::transposition(v, vertex, s);
    RationalFn g = apply_permutation(f, tau);
    bool ok = mode == Flavor::symmetric ? g == f : g == -f;
    if (!ok)
      throw SymmetryError("input is not block-" +
                          std::string(mode == Flavor::symmetric ? "symmetric" : "skew") +
                          " under S_" + std::to_string(r) + " x S_" + std::to_string(n - r));
  }
}

}  // namespace detail

// sum over shuffles sigma in Sh(r, n-r) of sigma(f / eu), with
// eu = prod_{j <= r < i} (l[vertex,i] - l[vertex,j]).  Polynomial inputs are
// contracted to polynomial outputs (hard error otherwise).
inline RationalFn pushforward_plain(const RationalFn& f, int r, int n,
                                    const std::string& vertex = "1") {
  if (r < 0 || n < 0 || r > n) throw std::invalid_argument("need 0 <= r <= n");
  detail::check_block_symmetry(f, r, n, vertex, Flavor::symmetric);
  DimVector v1, v2;
  v1.set(vertex, r);
  v2.set(vertex, n - r);
  if (f.is_polynomial())
    return RationalFn(detail::shuffle_sum_over_cross(f.num(), v1, v2));
  Poly eu = Poly::one();
  for (const auto& p : detail::cross_pairs(v1, v2))
    eu *= detail::lambda_diff(p.vertex, p.hi, p.lo);
  return detail::shuffle_sum_rational(f / RationalFn(eu), v1, v2, false);
}

// Signed variant: sum of sign(sigma) sigma(f / eu).  The value is in general a
// rational function; polynomiality is reported by the caller, not asserted.
inline RationalFn pushforward_sign(const RationalFn& f, int r, int n,
                                   const std::string& vertex = "1") {
  if (r < 0 || n < 0 || r > n) throw std::invalid_argument("need 0 <= r <= n");
  detail::check_block_symmetry(f, r, n, vertex, Flavor::skew);
  DimVector v1, v2;
  v1.set(vertex, r);
  v2.set(vertex, n - r);
  Poly eu = Poly::one();
  for (const auto& p : detail::cross_pairs(v1, v2))
    eu *= detail::lambda_diff(p.vertex, p.hi, p.lo);
  return detail::shuffle_sum_rational(f / RationalFn(eu), v1, v2, true);
}

}  // namespace coha
