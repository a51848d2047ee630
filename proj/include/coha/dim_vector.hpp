#pragma once
// Dimension vectors: nonnegative integer per vertex id.  Zero entries are
// not stored, so equality of the underlying maps is canonical.

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coha {

class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::map<std::string, int> counts) {
    for (auto& [v, n] : counts) set(v, n);
  }

  int at(const std::string& vertex) const {
    auto it = counts_.find(vertex);
    return it == counts_.end() ? 0 : it->second;
  }

  void set(const std::string& vertex, int n) {
    if (n < 0) throw std::invalid_argument("negative dimension at vertex " + vertex);
    if (n == 0)
      counts_.erase(vertex);
    else
      counts_[vertex] = n;
  }

  const std::map<std::string, int>& counts() const { return counts_; }
  bool is_zero() const { return counts_.empty(); }

  int total() const {
    int t = 0;
    for (const auto& [v, n] : counts_) t += n;
    return t;
  }

  friend DimVector operator+(const DimVector& a, const DimVector& b) {
    DimVector out = a;
    for (const auto& [v, n] : b.counts_) out.set(v, out.at(v) + n);
    return out;
  }

  friend bool operator==(const DimVector& a, const DimVector& b) = default;

  // Componentwise product summed over vertices: sum_i a^i b^i.
  friend int dot(const DimVector& a, const DimVector& b) {
    int t = 0;
    for (const auto& [v, n] : a.counts_) t += n * b.at(v);
    return t;
  }

  std::string str() const {
    std::string out = "{";
    for (const auto& [v, n] : counts_) {
      if (out.size() > 1) out += ", ";
      out += v + ": " + std::to_string(n);
    }
    return out + "}";
  }

 private:
  std::map<std::string, int> counts_;
};

}  // namespace coha
