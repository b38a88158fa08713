#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "torcon/contact.hpp"
#include "torcon/exactlat.hpp"
#include "torcon/polytope.hpp"

namespace testing {

using namespace torcon;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

inline RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

inline Rat q(long p, long d) { return ratio(Int(p), Int(d)); }

inline std::vector<Int> ints(std::initializer_list<long> xs) { return iv(xs); }

inline ToricDiagram diagram(const std::vector<RatVector>& vs) { return validate_diagram(convex_hull(vs)); }

inline ToricDiagram l53() { return diagram({rv({1, 0}), rv({0, 1}), rv({-1, -1})}); }
inline ToricDiagram order3() {
  return diagram({{q(1, 3), q(1, 3)}, {q(1, 3), q(2, 3)}, {q(2, 3), q(2, 3)}, {q(2, 3), q(1, 3)}});
}
inline ToricDiagram flop() { return diagram({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({2, 2})}); }

// Laplace expansion, an independent determinant
inline Int cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    Int term = m(0, j) * cofactor_det(minor);
    acc += (j % 2 == 0) ? term : Int(-term);
  }
  return acc;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace testing
