#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace tauttrack {

/// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

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
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  int count_sets() {
    int n = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i)
      if (find(i) == i) ++n;
    return n;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

/// Union-find carrying a parity bit per element relative to its root.
/// unite(a, b, p) records x_a xor x_b == p; returns false on contradiction.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n = 0) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    int root = x;
    while (parent_[root] != root) {
      p ^= parity_[root];
      root = parent_[root];
    }
    // compress
    int acc = p;
    while (parent_[x] != x) {
      int next = parent_[x];
      int step = parity_[x];
      parent_[x] = root;
      parity_[x] = acc;
      acc ^= step;
      x = next;
    }
    return {root, p};
  }

  bool unite(int a, int b, int p) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == p;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ p;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

}  // namespace tauttrack
