#pragma once

#include <numeric>
#include <vector>

namespace fincat::detail {

// Union-find whose representative is always the least id in its class.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    --components_;
    return true;
  }

  int components() const { return components_; }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  int components_;
};

}  // namespace fincat::detail
