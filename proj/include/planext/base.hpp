#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace planext {

using Vertex = int;
using NodeId = int;
using DartId = int;
using EdgeId = int;

// broken invariant inside a drawing or instance: a bug or malformed input
struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

// a placement request that does not fit the current drawing
struct PlacementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Dsu {
public:
  explicit Dsu(int n = 0) : p_(n) {
    for (int i = 0; i < n; ++i) p_[i] = i;
  }
  int add() {
    p_.push_back(static_cast<int>(p_.size()));
    return static_cast<int>(p_.size()) - 1;
  }
  int find(int x) const {
    while (p_[x] != x) {
      p_[x] = p_[p_[x]];
      x = p_[x];
    }
    return x;
  }
  // survivor root is find(a)
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p_[b] = a;
    return true;
  }
  int size() const { return static_cast<int>(p_.size()); }

private:
  mutable std::vector<int> p_;
};

struct Budget {
  long long limit = -1;  // -1: unlimited
  long long used = 0;
  void tick(const char* what) {
    if (limit >= 0 && ++used > limit) throw BudgetExceeded(what);
  }
};

}  // namespace planext
