#pragma once
// Dense matrices over an exact coefficient type, dual numbers (a + b*eps,
// eps^2 = 0), and the trace of a potential on a matrix representation.
// These back the desk check that cyclic derivatives compute the gradient of
// the trace function.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dim_vector.hpp"
#include "quiver.hpp"
#include "rational.hpp"

namespace coha {

struct Dual {
  Rational a, b;  // a + b*eps
  Dual() : a(0), b(0) {}
  Dual(Rational a_, Rational b_ = Rational(0)) : a(std::move(a_)), b(std::move(b_)) {}
  explicit Dual(long n) : a(n), b(0) {}

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  Dual& operator+=(const Dual& y) { return *this = *this + y; }
  friend bool operator==(const Dual& x, const Dual& y) = default;
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), T(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int i, int j) {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }
  const T& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix out(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const T& xik = x.at(i, k);
        for (int j = 0; j < y.cols_; ++j) out.at(i, j) += xik * y.at(k, j);
      }
    return out;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matrix dimension mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += y.data_[i];
    return out;
  }

  Matrix scaled(const T& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x * c;
    return out;
  }

  T trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
    T t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
template <typename T>
using Rep = std::map<std::string, Matrix<T>>;

namespace detail {

template <typename T>
const Matrix<T>& rep_matrix(const Rep<T>& rep, const Quiver& q, const DimVector& v,
                            const std::string& name) {
  auto it = rep.find(name);
  if (it == rep.end()) throw std::invalid_argument("representation missing arrow " + name);
  const Arrow& a = q.arrow(name);
  if (it->second.rows() != v.at(a.tgt) || it->second.cols() != v.at(a.src))
    throw std::invalid_argument("matrix shape mismatch for arrow " + name);
  return it->second;
}

}  // namespace detail

// Trace of W on a representation: for each term, the matrix product in word
// order (rightmost applied first), traced and weighted.
template <typename T>
T trace_potential(const Quiver& q, const Potential& w, const Rep<T>& rep,
                  const DimVector& v) {
  T total(0);
  for (const auto& t : w.terms()) {
    Matrix<T> m = detail::rep_matrix(rep, q, v, t.cycle.front());
    for (std::size_t k = 1; k < t.cycle.size(); ++k)
      m = m * detail::rep_matrix(rep, q, v, t.cycle[k]);
    T contribution = m.trace();
    T coeff(Rational(t.coeff));
    total += coeff * contribution;
  }
  return total;
}

// Evaluate a path sum on a representation; all terms share endpoints, and
// the empty word contributes an identity block.
inline RatMatrix path_sum_matrix(const Quiver& q, const PathSum& ps,
                                 const Rep<Rational>& rep, const DimVector& v) {
  if (ps.is_zero()) throw std::invalid_argument("path sum with no terms has no shape");
  const auto& first = ps.terms().front();
  RatMatrix total(v.at(first.tgt), v.at(first.src));
  for (const auto& t : ps.terms()) {
    RatMatrix m = RatMatrix::identity(v.at(t.src));
    if (!t.word.empty()) {
      m = detail::rep_matrix(rep, q, v, t.word.front());
      for (std::size_t k = 1; k < t.word.size(); ++k)
        m = m * detail::rep_matrix(rep, q, v, t.word[k]);
    }
    total = total + m.scaled(t.coeff);
  }
  return total;
}

// First-order term of tr W(rep + eps*dir) against the cyclic-derivative
// formula sum_a tr((dW/da)(rep) * dir_a); exact, via dual numbers.
inline bool gradient_identity_check(const Quiver& q, const Potential& w,
                                    const Rep<Rational>& rep, const Rep<Rational>& dir,
                                    const DimVector& v) {
  Rep<Dual> dual;
  for (const auto& a : q.arrows()) {
    auto ri = rep.find(a.name), di = dir.find(a.name);
    if (ri == rep.end() || di == dir.end())
      throw std::invalid_argument("representation missing arrow " + a.name);
    Matrix<Dual> m(ri->second.rows(), ri->second.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        m.at(i, j) = Dual(ri->second.at(i, j), di->second.at(i, j));
    dual[a.name] = std::move(m);
  }
  Rational lhs = trace_potential<Dual>(q, w, dual, v).b;

  Rational rhs(0);
  for (const auto& a : q.arrows()) {
    PathSum d = cyclic_derivative(q, w, a.name);
    if (d.is_zero()) continue;
    RatMatrix grad = path_sum_matrix(q, d, rep, v);
    rhs += (grad * dir.at(a.name)).trace();
  }
  return lhs == rhs;
}

}  // namespace coha
