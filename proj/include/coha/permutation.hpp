#pragma once
// Per-vertex permutations of lambda slots, their action on rational
// functions, and the enumeration of shuffle coset representatives.
//
// A VertexPermutation stores, for each vertex, the images of slots 1..n as a
// vector (images[s-1] = sigma(s)).  Its sign is the product of the per-vertex
// permutation signs.  Shuffles of (v1, v2) are the representatives that are
// increasing on the first v1 slots and on the last v2 slots, enumerated per
// vertex and combined by cartesian product; the count is prod_i C(n_i, v1_i).

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dim_vector.hpp"
#include "rational_fn.hpp"

namespace coha {

inline int permutation_sign(const std::vector<int>& images) {
  int inversions = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

struct VertexPermutation {
  std::map<std::string, std::vector<int>> images;
  int sign = 1;

  static VertexPermutation identity(const DimVector& v) {
    VertexPermutation out;
    for (const auto& [vertex, n] : v.counts()) {
      std::vector<int> id(static_cast<std::size_t>(n));
      for (int s = 1; s <= n; ++s) id[static_cast<std::size_t>(s - 1)] = s;
      out.images[vertex] = std::move(id);
    }
    return out;
  }

  static VertexPermutation transposition(const DimVector& v, const std::string& vertex,
                                         int slot) {
    VertexPermutation out = identity(v);
    auto it = out.images.find(vertex);
    if (it == out.images.end() || slot < 1 ||
        static_cast<std::size_t>(slot + 1) > it->second.size())
      throw std::domain_error("transposition slot out of range at vertex " + vertex);
    std::swap(it->second[static_cast<std::size_t>(slot - 1)],
              it->second[static_cast<std::size_t>(slot)]);
    out.sign = -1;
    return out;
  }

  int apply_slot(const std::string& vertex, int slot) const {
    auto it = images.find(vertex);
    if (it == images.end())
      throw std::domain_error("permutation has no entry for vertex " + vertex);
    if (slot < 1 || static_cast<std::size_t>(slot) > it->second.size())
      throw std::domain_error("slot " + std::to_string(slot) +
                              " out of permutation range at vertex " + vertex);
    return it->second[static_cast<std::size_t>(slot - 1)];
  }
};

// (a compose b)(s) = a(b(s)); sign is multiplicative.
inline VertexPermutation compose(const VertexPermutation& a, const VertexPermutation& b) {
  VertexPermutation out;
  out.sign = a.sign * b.sign;
  for (const auto& [vertex, bimg] : b.images) {
    auto it = a.images.find(vertex);
    std::vector<int> img(bimg.size());
    for (std::size_t s = 0; s < bimg.size(); ++s) {
      int mid = bimg[s];
      if (it == a.images.end()) {
        img[s] = mid;
      } else {
        if (mid < 1 || static_cast<std::size_t>(mid) > it->second.size())
          throw std::domain_error("permutation size mismatch at vertex " + vertex);
        img[s] = it->second[static_cast<std::size_t>(mid - 1)];
      }
    }
    out.images[vertex] = std::move(img);
  }
  for (const auto& [vertex, aimg] : a.images)
    if (!out.images.count(vertex)) out.images[vertex] = aimg;
  return out;
}

inline RationalFn apply_permutation(const RationalFn& f, const VertexPermutation& sigma) {
  std::map<VariableId, VariableId> rep;
  std::set<VariableId> used = f.num().variables();
  for (const auto& v : f.den().variables()) used.insert(v);
  for (const auto& v : used) {
    if (!v.is_lambda()) continue;
    int image = sigma.apply_slot(v.vertex, v.slot);  // throws when out of range
    if (image != v.slot) rep[v] = VariableId::lam(v.vertex, image);
  }
  return f.relabeled(rep);
}

// True iff f is invariant (symmetric) or alternating (skew) under every
// adjacent transposition allowed by v; those generate the full product of
// symmetric groups.  Lambda slots outside v are a precondition violation.
enum class Flavor { symmetric, skew };

inline bool symmetry_check(const RationalFn& f, const DimVector& v, Flavor mode) {
  std::set<VariableId> used = f.num().variables();
  for (const auto& w : f.den().variables()) used.insert(w);
  for (const auto& w : used)
    if (w.is_lambda() && (v.at(w.vertex) < w.slot))
      throw std::domain_error("lambda slot exceeds the dimension vector: " + w.name());
  for (const auto& [vertex, n] : v.counts()) {
    for (int s = 1; s < n; ++s) {
      VertexPermutation tau = VertexPermutation::transposition(v, vertex, s);
      RationalFn g = apply_permutation(f, tau);
      if (mode == Flavor::symmetric ? !(g == f) : !(g == -f)) return false;
    }
  }
  return true;
}

namespace detail {

// All p-subsets of {1..n} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    out.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (p - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < p; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline std::vector<std::vector<int>> block_shuffles(int p, int n) {
  std::vector<std::vector<int>> out;
  for (const auto& img1 : subsets(n, p)) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::vector<bool> taken(static_cast<std::size_t>(n + 1), false);
    for (int s = 0; s < p; ++s) {
      images[static_cast<std::size_t>(s)] = img1[static_cast<std::size_t>(s)];
      taken[static_cast<std::size_t>(img1[static_cast<std::size_t>(s)])] = true;
    }
    int t = p;
    for (int x = 1; x <= n; ++x)
      if (!taken[static_cast<std::size_t>(x)]) images[static_cast<std::size_t>(t++)] = x;
    out.push_back(std::move(images));
  }
  return out;
}

}  // namespace detail

inline std::vector<VertexPermutation> enumerate_shuffles(const DimVector& v1,
                                                         const DimVector& v2) {
  const DimVector total = v1 + v2;
  std::vector<std::string> verts;
  for (const auto& [vertex, n] : total.counts()) verts.push_back(vertex);

  std::vector<std::vector<std::vector<int>>> per;
  for (const auto& vertex : verts)
    per.push_back(detail::block_shuffles(v1.at(vertex), total.at(vertex)));

  std::vector<VertexPermutation> out;
  std::vector<std::size_t> idx(verts.size(), 0);
  for (;;) {
    VertexPermutation sigma;
    sigma.sign = 1;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const auto& img = per[k][idx[k]];
      sigma.sign *= permutation_sign(img);
      sigma.images[verts[k]] = img;
    }
    out.push_back(std::move(sigma));
    std::size_t k = 0;
    while (k < verts.size() && ++idx[k] == per[k].size()) idx[k++] = 0;
    if (k == verts.size()) break;
  }
  return out;
}

// Full product of symmetric groups at v, for (anti)symmetrization.
inline std::vector<VertexPermutation> all_permutations(const DimVector& v) {
  std::vector<std::string> verts;
  for (const auto& [vertex, n] : v.counts()) verts.push_back(vertex);
  std::vector<std::vector<std::vector<int>>> per;
  for (const auto& vertex : verts) {
    std::vector<int> base(static_cast<std::size_t>(v.at(vertex)));
    for (int s = 1; s <= v.at(vertex); ++s) base[static_cast<std::size_t>(s - 1)] = s;
    std::vector<std::vector<int>> all;
    do {
      all.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    per.push_back(std::move(all));
  }
  std::vector<VertexPermutation> out;
  std::vector<std::size_t> idx(verts.size(), 0);
  for (;;) {
    VertexPermutation sigma;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      sigma.sign *= permutation_sign(per[k][idx[k]]);
      sigma.images[verts[k]] = per[k][idx[k]];
    }
    out.push_back(std::move(sigma));
    std::size_t k = 0;
    while (k < verts.size() && ++idx[k] == per[k].size()) idx[k++] = 0;
    if (k == verts.size()) break;
  }
  return out;
}

}  // namespace coha
