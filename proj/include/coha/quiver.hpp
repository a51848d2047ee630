#pragma once
// Quivers, potentials, and the cyclic-derivative calculus.
//
// Word convention: a cycle (a_1, ..., a_n) is read right-to-left as
// operators, a_n applied first.  Composability is source(a_k) =
// target(a_{k+1}), closure target(a_1) = source(a_n).  The same convention
// drives matrix traces and cyclic derivatives, so the stored words look like
// the usual "l a a*" notation.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dim_vector.hpp"
#include "rational.hpp"

namespace coha {

struct NameClashError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name, src, tgt;
  int w1 = 1, w2 = 1;  // torus weight w1*t1 + w2*t2
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> vs(vertices_.begin(), vertices_.end());
    if (vs.size() != vertices_.size())
      throw std::invalid_argument("duplicate vertex id");
    std::set<std::string> names;
    for (const auto& a : arrows_) {
      if (!names.insert(a.name).second)
        throw NameClashError("duplicate arrow name: " + a.name);
      if (!vs.count(a.src) || !vs.count(a.tgt))
        throw std::invalid_argument("arrow " + a.name + " has undeclared endpoint");
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  bool has_vertex(const std::string& v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
  }

  const Arrow* find_arrow(const std::string& name) const {
    for (const auto& a : arrows_)
      if (a.name == name) return &a;
    return nullptr;
  }

  const Arrow& arrow(const std::string& name) const {
    if (const Arrow* a = find_arrow(name)) return *a;
    throw std::invalid_argument("no arrow named " + name);
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

// --- potentials ------------------------------------------------------------

struct CycleTerm {
  Rational coeff;
  std::vector<std::string> cycle;  // nonempty arrow names
};

class Potential {
 public:
  Potential() = default;
  explicit Potential(std::vector<CycleTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<CycleTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void validate(const Quiver& q) const {
    for (const auto& t : terms_) {
      if (t.cycle.empty()) throw std::invalid_argument("empty cycle in potential");
      for (std::size_t k = 0; k < t.cycle.size(); ++k) {
        const Arrow& cur = q.arrow(t.cycle[k]);
        const Arrow& next = q.arrow(t.cycle[(k + 1) % t.cycle.size()]);
        // operator order: the next word entry is applied before this one
        if (cur.src != next.tgt)
          throw std::invalid_argument("cycle not composable at " + cur.name + "," +
                                      next.name);
      }
    }
  }

  // Canonical form: every cycle rotated to its lexicographically least
  // rotation, like terms merged, zero terms dropped, terms sorted.
  Potential canonical() const {
    std::map<std::vector<std::string>, Rational> acc;
    for (const auto& t : terms_) {
      std::vector<std::string> best = t.cycle;
      std::vector<std::string> rot = t.cycle;
      for (std::size_t k = 1; k < t.cycle.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
      }
      acc[best] += t.coeff;
    }
    std::vector<CycleTerm> out;
    for (const auto& [cycle, coeff] : acc)
      if (coeff != 0) out.push_back({coeff, cycle});
    return Potential(std::move(out));
  }

  friend bool equivalent(const Potential& a, const Potential& b) {
    auto ca = a.canonical().terms_, cb = b.canonical().terms_;
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (ca[i].coeff != cb[i].coeff || ca[i].cycle != cb[i].cycle) return false;
    return true;
  }

  std::string str() const;

 private:
  std::vector<CycleTerm> terms_;
};

// --- open path sums (cyclic derivatives) ------------------------------------

struct PathTerm {
  Rational coeff;
  std::vector<std::string> word;  // may be empty: the identity path at src
  std::string src, tgt;           // path runs src -> tgt in operator order
};

class PathSum {
 public:
  PathSum() = default;
  explicit PathSum(std::vector<PathTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<PathTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PathSum canonical() const {
    std::map<std::tuple<std::vector<std::string>, std::string, std::string>, Rational> acc;
    for (const auto& t : terms_) acc[{t.word, t.src, t.tgt}] += t.coeff;
    std::vector<PathTerm> out;
    for (const auto& [key, coeff] : acc)
      if (coeff != 0)
        out.push_back({coeff, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    return PathSum(std::move(out));
  }

  friend bool equivalent(const PathSum& a, const PathSum& b) {
    auto ca = a.canonical().terms_, cb = b.canonical().terms_;
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i].coeff != cb[i].coeff || ca[i].word != cb[i].word ||
          ca[i].src != cb[i].src || ca[i].tgt != cb[i].tgt)
        return false;
    }
    return true;
  }

  std::string str() const;

 private:
  std::vector<PathTerm> terms_;
};

inline std::string joined_word(const std::vector<std::string>& word, const std::string& src) {
  if (word.empty()) return "e_" + src;
  std::string out;
  for (const auto& a : word) {
    if (!out.empty()) out += "*";
    out += a;
  }
  return out;
}

inline std::string format_terms(const std::vector<std::pair<Rational, std::string>>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, body] : parts) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a == 1)
      out += body;
    else
      out += to_string(a) + "*" + body;
  }
  return out;
}

inline std::string Potential::str() const {
  std::vector<std::pair<Rational, std::string>> parts;
  for (const auto& t : terms_) parts.emplace_back(t.coeff, joined_word(t.cycle, ""));
  return format_terms(parts);
}

inline std::string PathSum::str() const {
  std::vector<std::pair<Rational, std::string>> parts;
  for (const auto& t : terms_) parts.emplace_back(t.coeff, joined_word(t.word, t.src));
  return format_terms(parts);
}

// d(u)/d(a) = sum over occurrences a_i = a of the opened word
// a_{i+1} ... a_n a_1 ... a_{i-1}, an operator path target(a) -> source(a).
inline PathSum cyclic_derivative(const Quiver& q, const Potential& w,
                                 const std::string& arrow_name) {
  const Arrow& a = q.arrow(arrow_name);
  std::vector<PathTerm> terms;
  for (const auto& t : w.terms()) {
    const auto& u = t.cycle;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != arrow_name) continue;
      std::vector<std::string> word;
      for (std::size_t k = 1; k < u.size(); ++k) word.push_back(u[(i + k) % u.size()]);
      terms.push_back({t.coeff, std::move(word), a.tgt, a.src});
    }
  }
  return PathSum(std::move(terms)).canonical();
}

// --- cuts -------------------------------------------------------------------

struct CutReport {
  bool is_cut = false;
  bool satisfies_loop_assumption = false;
  std::vector<std::string> violations;
};

inline CutReport validate_cut(const Quiver& q, const Potential& w,
                              const std::vector<std::string>& cut) {
  CutReport report;
  std::set<std::string> c;
  for (const auto& name : cut) {
    q.arrow(name);  // must exist
    c.insert(name);
  }
  report.is_cut = true;
  const Potential wc = w.canonical();
  for (const auto& t : wc.terms()) {
    int degree = 0;
    for (const auto& a : t.cycle) degree += c.count(a) ? 1 : 0;
    if (degree != 1) {
      report.is_cut = false;
      report.violations.push_back("cycle " + joined_word(t.cycle, "") + " has degree " +
                                  std::to_string(degree) + " (want 1)");
    }
  }

  bool loops_ok = report.is_cut;
  std::map<std::string, int> loops_at;
  for (const auto& name : c) {
    const Arrow& a = q.arrow(name);
    if (a.src != a.tgt) {
      loops_ok = false;
      report.violations.push_back("cut arrow " + name + " is not an edge loop");
    } else {
      ++loops_at[a.src];
    }
  }
  for (const auto& v : q.vertices()) {
    int n = loops_at.count(v) ? loops_at[v] : 0;
    if (n != 1) {
      loops_ok = false;
      report.violations.push_back("vertex " + v + " has " + std::to_string(n) +
                                  " cut loops (want 1)");
    }
  }
  report.satisfies_loop_assumption = report.is_cut && loops_ok;
  return report;
}

// --- doubled and extended quivers -------------------------------------------

inline std::string star_name(const std::string& a) { return a + "_star"; }
inline std::string loop_name(const std::string& v) { return "l_" + v; }
inline std::string framing_out_name(const std::string& v) { return "j_" + v; }
inline std::string framing_in_name(const std::string& v) { return "i_" + v; }
inline std::string framing_vertex(const std::string& v) { return v + "_prime"; }

// In a plain quiver an arrow's weight pair is read as (m_a, m_{a*}); doubling
// splits it so a carries (m_a, 0) and a* carries (0, m_{a*}).
inline Quiver double_quiver(const Quiver& q) {
  std::vector<Arrow> arrows;
  std::set<std::string> names;
  for (const auto& a : q.arrows()) names.insert(a.name);
  for (const auto& a : q.arrows()) {
    arrows.push_back({a.name, a.src, a.tgt, a.w1, 0});
    std::string star = star_name(a.name);
    if (names.count(star))
      throw NameClashError("generated name " + star + " clashes with an existing arrow");
    arrows.push_back({star, a.tgt, a.src, 0, a.w2});
  }
  return Quiver(q.vertices(), std::move(arrows));
}

// Pairs (a, a_star) of a double quiver in declaration order; throws when the
// quiver is not a double (unpaired arrows or wrong weight shape).
inline std::vector<std::pair<const Arrow*, const Arrow*>> double_pairs(const Quiver& q) {
  std::vector<std::pair<const Arrow*, const Arrow*>> out;
  std::set<std::string> seen;
  for (const auto& a : q.arrows()) {
    if (seen.count(a.name)) continue;
    if (a.name.size() > 5 && a.name.ends_with("_star")) {
      std::string base = a.name.substr(0, a.name.size() - 5);
      if (!q.find_arrow(base))
        throw std::domain_error("unpaired arrow " + a.name + " (no " + base + ")");
      continue;  // handled from its base arrow
    }
    const Arrow* star = q.find_arrow(star_name(a.name));
    if (!star)
      throw std::domain_error("unpaired arrow " + a.name + " (no " + star_name(a.name) +
                              ")");
    if (star->src != a.tgt || star->tgt != a.src)
      throw std::domain_error("arrow " + star->name + " does not reverse " + a.name);
    if (a.w2 != 0 || star->w1 != 0)
      throw std::domain_error("double-quiver weight shape violated on pair (" + a.name +
                              ", " + star->name + "): want (m,0) and (0,m)");
    seen.insert(a.name);
    seen.insert(star->name);
    out.emplace_back(&a, star);
  }
  return out;
}

inline bool is_double_quiver(const Quiver& q) {
  try {
    double_pairs(q);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

// The quiver itself when already a double, its double otherwise.
inline Quiver as_double(const Quiver& q) {
  return is_double_quiver(q) ? q : double_quiver(q);
}

struct ExtendedQuiver {
  Quiver quiver;
  Potential potential;
  std::vector<std::string> cut;
};

inline ExtendedQuiver ginzburg_extend(const Quiver& q) {
  Quiver dbl = double_quiver(q);
  std::set<std::string> names;
  for (const auto& a : dbl.arrows()) names.insert(a.name);

  std::vector<Arrow> arrows = dbl.arrows();
  std::vector<std::string> cut;
  for (const auto& v : q.vertices()) {
    std::string l = loop_name(v);
    if (names.count(l))
      throw NameClashError("generated name " + l + " clashes with an existing arrow");
    arrows.push_back({l, v, v, 1, 1});
    cut.push_back(l);
  }

  std::vector<CycleTerm> terms;
  for (const auto& a : q.arrows()) {
    terms.push_back({Rational(1), {loop_name(a.tgt), a.name, star_name(a.name)}});
    terms.push_back({Rational(-1), {loop_name(a.src), star_name(a.name), a.name}});
  }
  ExtendedQuiver out{Quiver(q.vertices(), std::move(arrows)), Potential(std::move(terms)),
                     std::move(cut)};
  out.potential.validate(out.quiver);
  return out;
}

inline ExtendedQuiver framed_extend(const Quiver& q) {
  std::set<std::string> arrow_names;
  for (const auto& a : q.arrows()) arrow_names.insert(a.name);
  std::set<std::string> vertex_names(q.vertices().begin(), q.vertices().end());

  std::vector<std::string> vertices = q.vertices();
  for (const auto& v : q.vertices()) {
    std::string fv = framing_vertex(v);
    if (vertex_names.count(fv))
      throw NameClashError("generated vertex " + fv + " clashes with an existing vertex");
    vertices.push_back(fv);
  }

  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) {
    arrows.push_back({a.name, a.src, a.tgt, a.w1, 0});
    std::string star = star_name(a.name);
    if (arrow_names.count(star)) throw NameClashError("generated name " + star + " clashes");
    arrows.push_back({star, a.tgt, a.src, 0, a.w2});
  }
  std::vector<std::string> cut;
  for (const auto& v : q.vertices()) {
    for (const auto& gen : {framing_out_name(v), framing_in_name(v), loop_name(v)})
      if (arrow_names.count(gen))
        throw NameClashError("generated name " + gen + " clashes with an existing arrow");
    arrows.push_back({framing_out_name(v), v, framing_vertex(v), 1, 0});
    arrows.push_back({framing_in_name(v), framing_vertex(v), v, 0, 1});
    arrows.push_back({loop_name(v), v, v, 1, 1});
    cut.push_back(loop_name(v));
  }

  std::vector<CycleTerm> terms;
  for (const auto& a : q.arrows()) {
    terms.push_back({Rational(1), {loop_name(a.tgt), a.name, star_name(a.name)}});
    terms.push_back({Rational(-1), {loop_name(a.src), star_name(a.name), a.name}});
  }
  for (const auto& v : q.vertices())
    terms.push_back({Rational(1), {loop_name(v), framing_in_name(v), framing_out_name(v)}});

  ExtendedQuiver out{Quiver(std::move(vertices), std::move(arrows)),
                     Potential(std::move(terms)), std::move(cut)};
  out.potential.validate(out.quiver);
  return out;
}

}  // namespace coha
