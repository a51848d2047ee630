#pragma once
// Packed fixed-lane polynomial evaluation: an internal representation used by
// the product engine when a computation involves at most eight variables with
// exponents that fit one byte per lane.  A monomial becomes a single 64-bit
// key (one byte per variable), so multiplying monomials is an integer
// addition, relabeling along a slot permutation is a byte permutation, and
// coefficient accumulation runs through a hash table.  Everything here is an
// evaluation detail: values entering and leaving are ordinary Poly objects
// and results are bit-identical to the generic path.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "variable.hpp"

namespace coha::detail {

inline constexpr int kPackedLanes = 8;
inline constexpr int kPackedExpMax = 255;  // one byte per lane

struct PackedKeyHash {
  std::size_t operator()(std::uint64_t k) const noexcept {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdull;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ull;
    k ^= k >> 33;
    return static_cast<std::size_t>(k);
  }
};

// Coefficients are exact integers: the packed path only accepts integer
// polynomials (can_encode), which lets accumulation use fused mpz_addmul with
// no per-term canonicalization or temporaries.
struct PackedPoly {
  std::unordered_map<std::uint64_t, mpz_class, PackedKeyHash> terms;
};

class PackedTable {
 public:
  // nullopt when the (deduplicated) variable set needs more than 8 lanes.
  static std::optional<PackedTable> build(std::vector<VariableId> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() > static_cast<std::size_t>(kPackedLanes)) return std::nullopt;
    PackedTable t;
    t.vars_ = std::move(vars);
    return t;
  }

  const std::vector<VariableId>& vars() const { return vars_; }

  int lane_of(const VariableId& v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    return it != vars_.end() && *it == v ? static_cast<int>(it - vars_.begin()) : -1;
  }

  // Every coefficient must be an integer, every variable must have a lane,
  // and every exponent must fit a byte.
  bool can_encode(const Poly& p) const {
    for (const auto& [m, c] : p.terms()) {
      if (c.get_den() != 1) return false;
      for (const auto& [v, e] : m)
        if (e > kPackedExpMax || lane_of(v) < 0) return false;
    }
    return true;
  }

  PackedPoly encode(const Poly& p) const {
    PackedPoly out;
    out.terms.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
      std::uint64_t key = 0;
      for (const auto& [v, e] : m)
        key |= static_cast<std::uint64_t>(e) << (8 * lane_of(v));
      out.terms.emplace(key, c.get_num());
    }
    return out;
  }

  Poly decode(const PackedPoly& p) const {
    Poly out;
    for (const auto& [key, c] : p.terms) {
      if (c == 0) continue;
      Monomial m;
      for (int lane = 0; lane < static_cast<int>(vars_.size()); ++lane)
        if (int e = static_cast<int>((key >> (8 * lane)) & 0xFF); e > 0)
          m.emplace_back(vars_[static_cast<std::size_t>(lane)], e);
      out.add_term(m, Rational(c));
    }
    return out;
  }

 private:
  std::vector<VariableId> vars_;  // ascending; lane i holds vars_[i]
};

// Per-lane upper bound on exponents (bitwise OR over keys: never below the
// true maximum, so bounds checked against it are sound).
inline int max_lane_exponent(const PackedPoly& p) {
  std::uint64_t acc = 0;
  for (const auto& [key, c] : p.terms) acc |= key;
  int m = 0;
  for (int lane = 0; lane < kPackedLanes; ++lane)
    m = std::max(m, static_cast<int>((acc >> (8 * lane)) & 0xFF));
  return m;
}

// True when no lane can overflow its byte in the product a*b.
inline bool packed_mul_fits(const PackedPoly& a, const PackedPoly& b) {
  return max_lane_exponent(a) + max_lane_exponent(b) <= kPackedExpMax;
}

inline PackedPoly packed_mul(const PackedPoly& a, const PackedPoly& b) {
  PackedPoly out;
  out.terms.reserve(
      std::min<std::size_t>(a.terms.size() * b.terms.size() / 2 + 8, std::size_t{1} << 20));
  for (const auto& [ka, ca] : a.terms) {
    if (ca == 0) continue;
    for (const auto& [kb, cb] : b.terms) {
      mpz_class& slot = out.terms[ka + kb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

// Divided difference (f - f|swap) / (hi - lo) on two lanes, term by term:
// c*rest*hi^a*lo^b with a > b yields c*rest*(hi*lo)^b*(hi^{a-b-1} + ... +
// lo^{a-b-1}), a < b the negation with roles swapped, a == b nothing.  Exact
// for every input by construction.
inline PackedPoly packed_demazure_step(const PackedPoly& p, int lane_lo, int lane_hi) {
  const std::uint64_t lo_mask = 0xFFull << (8 * lane_lo);
  const std::uint64_t hi_mask = 0xFFull << (8 * lane_hi);
  PackedPoly out;
  out.terms.reserve(p.terms.size());
  for (const auto& [key, c] : p.terms) {
    if (c == 0) continue;
    const int a = static_cast<int>((key >> (8 * lane_hi)) & 0xFF);
    const int b = static_cast<int>((key >> (8 * lane_lo)) & 0xFF);
    if (a == b) continue;
    const std::uint64_t rest = key & ~lo_mask & ~hi_mask;
    const int low = std::min(a, b), d = std::max(a, b) - low;
    for (int j = 0; j < d; ++j) {
      const std::uint64_t nk = rest |
                               (static_cast<std::uint64_t>(low + j) << (8 * lane_lo)) |
                               (static_cast<std::uint64_t>(low + d - 1 - j) << (8 * lane_hi));
      auto& slot = out.terms[nk];
      if (a > b)
        slot += c;
      else
        slot -= c;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

// perm[i] = destination lane of lane i (a bijection on 0..7).
inline std::uint64_t permute_lanes(std::uint64_t key,
                                   const std::array<int, kPackedLanes>& perm) {
  std::uint64_t out = 0;
  for (int i = 0; i < kPackedLanes; ++i)
    out |= ((key >> (8 * i)) & 0xFFull) << (8 * perm[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace coha::detail
