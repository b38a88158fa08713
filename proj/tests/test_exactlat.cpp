#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "support.hpp"

using namespace testing;

namespace {

bool is_row_hermite(const IntMatrix& h) {
  std::size_t lead = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    if (j == h.cols()) {
      for (std::size_t k = i; k < h.rows(); ++k)
        for (std::size_t c = 0; c < h.cols(); ++c)
          if (h(k, c) != 0) return false;
      return true;
    }
    if (i > 0 && j <= lead) return false;
    if (h(i, j) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, j) < 0 || h(k, j) >= h(i, j)) return false;
    lead = j;
  }
  return true;
}

// gcd of all k x k minors, by brute force over row and column subsets
Int minor_gcd(const IntMatrix& m, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rs, cs;
  std::function<void(std::size_t, std::vector<std::size_t>&, std::size_t, std::vector<std::vector<std::size_t>>&)> choose =
      [&](std::size_t start, std::vector<std::size_t>& cur, std::size_t total, std::vector<std::vector<std::size_t>>& out) {
        if (cur.size() == k) {
          out.push_back(cur);
          return;
        }
        for (std::size_t i = start; i < total; ++i) {
          cur.push_back(i);
          choose(i + 1, cur, total, out);
          cur.pop_back();
        }
      };
  std::vector<std::vector<std::size_t>> rows, cols;
  choose(0, rs, m.rows(), rows);
  choose(0, cs, m.cols(), cols);
  for (const auto& r : rows)
    for (const auto& c : cols) {
      IntMatrix s(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = m(r[i], c[j]);
      g = gcd(g, cofactor_det(s));
    }
  return g;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  Rat a = ratio(Int(6), Int(-4));
  CHECK(a.get_num() == -3);
  CHECK(a.get_den() == 2);
  CHECK(floor_rat(q(-7, 3)) == -3);
  CHECK(ceil_rat(q(-7, 3)) == -2);
  CHECK(frac(q(-7, 3)) == q(2, 3));
  CHECK(to_string(q(4, 2)) == "2");
  CHECK(to_string(q(-1, 3)) == "-1/3");
}

TEST_CASE("hermite normal form on fixed inputs") {
  auto id = IntMatrix::identity(3);
  auto h = hermite_normal_form(id);
  CHECK(h.H == id);
  CHECK(h.U == id);

  auto one = hermite_normal_form(IntMatrix::from_rows({iv({2, 4})}));
  CHECK(one.H == IntMatrix::from_rows({iv({2, 4})}));
  CHECK(one.U == IntMatrix::identity(1));

  auto m = IntMatrix::from_rows({iv({1, 2, 3}), iv({2, 2, 3})});
  auto r = hermite_normal_form(m);
  CHECK(r.U * m == r.H);
  CHECK(is_row_hermite(r.H));
  CHECK(abs(determinant(r.U)) == 1);
  CHECK(r.U * r.U_inv == IntMatrix::identity(2));
}

TEST_CASE("hermite normal form properties on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    auto m = random_matrix(rng, r, c, 6);
    auto h = hermite_normal_form(m);
    REQUIRE(h.U * m == h.H);
    REQUIRE(abs(determinant(h.U)) == 1);
    REQUIRE(h.U * h.U_inv == IntMatrix::identity(r));
    REQUIRE(is_row_hermite(h.H));
  }
}

TEST_CASE("smith invariants") {
  CHECK(smith_invariants(IntMatrix::identity(3)) == ints({1, 1, 1}));
  CHECK(smith_invariants(IntMatrix::from_rows({iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})})) == ints({1, 1, 3}));
  CHECK(smith_invariants(IntMatrix::from_rows({iv({2, 0}), iv({0, 2})})) == ints({2, 2}));

  // d_1 ... d_k equals the gcd of the k x k minors
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 4;
    auto m = random_matrix(rng, r, c, 5);
    auto s = smith_form(m);
    REQUIRE(s.P * m * s.Q == s.S);
    REQUIRE(abs(determinant(s.P)) == 1);
    REQUIRE(abs(determinant(s.Q)) == 1);
    Int prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      Int g = minor_gcd(m, k);
      if (k <= s.invariants.size()) {
        prod *= s.invariants[k - 1];
        REQUIRE(prod == g);
        if (k > 1) REQUIRE(s.invariants[k - 1] % s.invariants[k - 2] == 0);
      } else {
        REQUIRE(g == 0);
      }
    }
  }
}

TEST_CASE("determinant, rank, inverse and solve") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + trial % 4;
    auto m = random_matrix(rng, n, n, 7);
    Int d = determinant(m);
    REQUIRE(d == cofactor_det(m));
    REQUIRE(determinant(to_rational(m)) == Rat(d));
    REQUIRE((rank(m) == n) == (d != 0));
    if (d != 0) {
      auto inv = *inverse(to_rational(m));
      REQUIRE(inv * to_rational(m) == to_rational(IntMatrix::identity(n)));
      RatVector b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = Rat(static_cast<long>(i) - 1);
      auto x = solve(to_rational(m), b);
      REQUIRE(x);
      REQUIRE(to_rational(m) * *x == b);
    } else {
      REQUIRE_FALSE(inverse(to_rational(m)));
      for (const auto& k : nullspace(to_rational(m))) REQUIRE(to_rational(m) * k == RatVector(n));
      REQUIRE(nullspace(to_rational(m)).size() == n - rank(m));
    }
  }
  CHECK_FALSE(solve(to_rational(IntMatrix::from_rows({iv({1, 1}), iv({2, 2})})), {Rat(1), Rat(3)}));
}

TEST_CASE("unimodular inverse") {
  auto u = IntMatrix::from_rows({iv({-2, 0, 1}), iv({-1, 1, 0}), iv({1, 0, 0})});
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(3));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix::from_rows({iv({2, 0}), iv({0, 1})})), LatticeError);
}

TEST_CASE("completion to a basis") {
  auto eta = complete_to_basis({iv({1, 2, 3}), iv({2, 2, 3})});
  CHECK(abs(determinant(IntMatrix::from_rows({iv({1, 2, 3}), iv({2, 2, 3}), eta}))) == 1);
  CHECK(complete_to_basis({iv({1, 2, 3}), iv({2, 2, 3})}) == eta);

  auto e = complete_to_basis({iv({1, 0, 0}), iv({0, 1, 0})});
  CHECK(abs(e[2]) == 1);
  auto f = complete_to_basis({iv({1, 0, 1}), iv({0, 1, 1})});
  CHECK(abs(determinant(IntMatrix::from_rows({iv({1, 0, 1}), iv({0, 1, 1}), f}))) == 1);

  CHECK_THROWS_AS(complete_to_basis({iv({2, 0, 0}), iv({0, 1, 0})}), LatticeError);
  try {
    complete_to_basis({iv({2, 0, 0}), iv({0, 1, 0})});
  } catch (const LatticeError& err) {
    CHECK(err.kind() == LatticeError::Kind::NotUnimodularSystem);
  }

  std::mt19937 rng(5);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 60; ++trial) {
    auto m = random_matrix(rng, 2, 4, 4);
    std::vector<IntVector> vs{m.row(0), m.row(1)};
    auto inv = smith_invariants(m);
    if (inv.size() != 2 || inv[1] != 1) continue;
    ++done;
    auto ws = unimodular_completion(vs);
    REQUIRE(ws.size() == 2);
    auto all = vs;
    all.insert(all.end(), ws.begin(), ws.end());
    REQUIRE(determinant(IntMatrix::from_rows(all)) == 1);
  }
  CHECK(done == 60);
}

TEST_CASE("lattice index") {
  CHECK(lattice_index({iv({1, 1, 2}), iv({1, 0, 3}), iv({2, 1, 1})}) == 4);
  CHECK(lattice_index({iv({1, 0, 0}), iv({0, 1, 0})}) == 1);
  CHECK(lattice_index({iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, -1, 1})}) == 3);
  CHECK_THROWS_AS(lattice_index({iv({1, 2}), iv({2, 4})}), LatticeError);

  std::mt19937 rng(13);
  int done = 0;
  while (done < 100) {
    auto m = random_matrix(rng, 3, 3, 4);
    Int d = cofactor_det(m);
    if (d == 0 || abs(d) > 50) continue;
    ++done;
    REQUIRE(lattice_index({m.row(0), m.row(1), m.row(2)}) == abs(d));
  }
}

TEST_CASE("jets") {
  CHECK(jet_floor(Jet(q(7, 3), Rat(5))) == 2);
  CHECK(jet_floor(Jet(q(7, 3), Rat(-5))) == 2);
  CHECK(jet_floor(Jet(Rat(2), Rat(1))) == 2);
  CHECK(jet_floor(Jet(Rat(2), Rat(-1))) == 1);
  CHECK(jet_floor(Jet(q(-1, 3), Rat(1))) == -1);
  CHECK_THROWS_AS(jet_floor(Jet(Rat(2), Rat(0))), LatticeError);

  CHECK(Jet(Rat(1), Rat(0)) < Jet(Rat(1), Rat(1)));
  CHECK(Jet(Rat(1), Rat(5)) < Jet(Rat(2), Rat(-5)));
  CHECK(Jet(Rat(0), Rat(-1)).sign() < 0);

  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int i = 0; i < 200; ++i) {
    Rat a(dist(rng)), b = q(dist(rng), 7), c = q(dist(rng), 5);
    if (c == 0) continue;
    REQUIRE((Jet(a) + Jet(b)).value == a + b);
    REQUIRE((Jet(a) * Jet(b)) == Jet(a * b));
    REQUIRE((Jet(a) / Jet(c)) == Jet(a / c));
    Jet x(a, b), y(c, a);
    // first order: (a + b e)(c + a e) = ac + (a^2 + bc) e
    REQUIRE(x * y == Jet(a * c, a * a + b * c));
    REQUIRE((x / y) * y == Jet(x.value, x.slope));
  }
}
