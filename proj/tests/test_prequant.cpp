#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "support.hpp"
#include "torcon/corpus.hpp"
#include "torcon/prequant.hpp"

using namespace testing;

namespace {

ToricDiagram alt_l53() { return diagram({rv({0, 0}), rv({1, 0}), rv({2, 3})}); }
IntMatrix worked_basis() { return IntMatrix::from_rows({iv({-2, 0, 1}), iv({-1, 1, 0}), iv({1, 0, 0})}); }

LabelledPolytope triangle(std::initializer_list<long> b) { return LabelledPolytope({iv({1, 0}), iv({0, 1}), iv({-1, -1})}, ints(b)); }
LabelledPolytope square(std::initializer_list<long> b) {
  return LabelledPolytope({iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})}, ints(b));
}

std::vector<long> row(const GradedDimension& g, long top) {
  std::vector<long> out;
  for (long d = 0; d <= top; d += 2) out.push_back(g.at(Rat(d)).get_si());
  return out;
}

using SectorKey = std::pair<std::vector<std::size_t>, Rat>;

std::set<SectorKey> sector_keys(const QuotientData& q) {
  std::set<SectorKey> out;
  for (const auto& s : q.sectors)
    for (const auto& c : s.components) out.insert({c.face, s.T});
  return out;
}

// Scan every lattice point of the half-open parallelepiped spanned by the facet normals
// and nu, for each facet of D. A point sum c_j nu_j + t nu with t > 0 is the sector
// (support of c, t); t = 0 forces c = 0 and stands for T = 1.
std::set<SectorKey> sector_oracle(const ToricDiagram& d, const IntVector& nu) {
  std::set<SectorKey> out{{{}, Rat(1)}};
  const std::size_t dim = d.dimension() + 1;
  for (const auto& f : d.facets()) {
    std::vector<IntVector> gens;
    for (auto v : f.vertices) gens.push_back(d.normals()[v]);
    gens.push_back(nu);
    RatMatrix a = to_rational(IntMatrix::from_columns(gens));
    std::vector<long> lo(dim, 0), hi(dim, 0);
    for (std::size_t c = 0; c < dim; ++c)
      for (const auto& g : gens) (g[c] < 0 ? lo[c] : hi[c]) += g[c].get_si();
    IntVector cur(dim);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (c == dim) {
        auto x = solve(a, RatVector(cur.begin(), cur.end()));
        REQUIRE(x);
        for (const auto& v : *x)
          if (v < 0 || v >= 1) return;
        const Rat t = x->back();
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j + 1 < x->size(); ++j)
          if ((*x)[j] != 0) support.push_back(f.vertices[j]);
        std::sort(support.begin(), support.end());
        if (t == 0) {
          CHECK(support.empty());
          return;
        }
        out.insert({support, t});
        return;
      }
      for (long v = lo[c]; v <= hi[c]; ++v) {
        cur[c] = v;
        rec(c + 1);
      }
    };
    rec(0);
  }
  return out;
}

struct Prequantized {
  std::string name;
  LabelledPolytope p;
  std::vector<long> totals;  // degrees 0, 2, 4, ...
};

std::vector<Prequantized> tables() {
  return {
      {"S5", triangle({0, 0, 1}), {0, 0, 1, 1, 1, 1}},
      {"L53", triangle({1, 1, 1}), {1, 2, 3, 3, 3, 3}},
      {"S*S3", square({0, 0, 1, 1}), {0, 1, 2, 2, 2, 2}},
      {"S*RP3", square({1, 1, 1, 1}), {1, 3, 4, 4, 4, 4}},
  };
}

}  // namespace

TEST_CASE("good cones") {
  CHECK(is_good_cone(l53().normals()));
  CHECK(is_good_cone({iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, 0, 3}), iv({0, -1, 3})}));
  CHECK(is_good_cone(alt_l53().normals()));
  CHECK(is_good_cone(order3().normals()));
  // only faces of codimension at most n are constrained, so the apex is free
  CHECK(is_good_cone({iv({2, 1}), iv({0, 1})}));

  auto bad = good_cone_certificate({iv({0, 0, 1}), iv({2, 0, 1}), iv({0, 2, 1})});
  CHECK_FALSE(bad.good);
  REQUIRE(bad.failing);
  const auto& face = bad.faces[*bad.failing];
  CHECK(face.codimension == 2);
  CHECK(face.invariants == ints({1, 2}));
  for (const auto& f : bad.faces) CHECK(f.codimension <= 2);  // never the apex

  auto cert = good_cone_certificate(l53().normals());
  CHECK(cert.faces.size() == 7);  // the cone, three facets, three edges
  CHECK(cert.rays.size() == 3);

  try {
    good_cone_certificate({iv({1, 0}), iv({-1, 0})});
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::NotStrictlyConvex);
  }
  try {
    good_cone_certificate({iv({2, 0}), iv({0, 1})});
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::NotPrimitive);
  }
}

TEST_CASE("gorenstein index of labelled polytopes") {
  auto a = gorenstein_r(triangle({0, 0, 1}));
  REQUIRE(a);
  CHECK(a->r == 3);
  CHECK(a->w == iv({1, 1}));
  auto b = gorenstein_r(triangle({1, 1, 1}));
  REQUIRE(b);
  CHECK(b->r == 1);
  CHECK(b->w == iv({0, 0}));
  CHECK(gorenstein_r(square({0, 0, 1, 1}))->r == 2);
  CHECK(gorenstein_r(square({1, 1, 1, 1}))->r == 1);
  CHECK_FALSE(gorenstein_r(triangle({0, 0, 2})));
  CHECK_FALSE(gorenstein_r(LabelledPolytope({iv({2, 0}), iv({0, 1}), iv({-1, -1})}, ints({0, 0, 1}))));
  for (const auto& t : tables()) {
    auto g = gorenstein_r(t.p);
    REQUIRE(g);
    for (const auto& n : cone_normals(t.p)) {
      IntVector wr = g->w;
      wr.push_back(g->r);
      CHECK(dot(wr, n) == 1);
    }
  }
}

TEST_CASE("diagram of a labelled polytope") {
  for (const auto& t : tables()) {
    auto ld = diagram_from_labelled(t.p);
    auto g = gorenstein_r(t.p);
    const std::size_t n = t.p.dimension();
    CHECK(abs(determinant(ld.basis)) == 1);
    IntVector last = ld.basis.row(n);
    CHECK(IntVector(last.begin(), last.end() - 1) == g->w);
    CHECK(last.back() == g->r);
    auto cn = cone_normals(t.p);
    for (std::size_t j = 0; j < cn.size(); ++j) {
      CHECK(ld.basis * cn[j] == ld.images[j]);
      CHECK(ld.images[j].back() == 1);
    }
    CHECK(ld.diagram.order() == 1);
  }
  CHECK(normalized_volume(diagram_from_labelled(triangle({0, 0, 1})).diagram.polytope()) == 1);
  CHECK(normalized_volume(diagram_from_labelled(triangle({1, 1, 1})).diagram.polytope()) == 3);
  CHECK(normalized_volume(diagram_from_labelled(square({0, 0, 1, 1})).diagram.polytope()) == 2);
  CHECK(normalized_volume(diagram_from_labelled(square({1, 1, 1, 1})).diagram.polytope()) == 4);
  try {
    diagram_from_labelled(triangle({0, 0, 2}));
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::NotGorenstein);
  }
}

TEST_CASE("the weighted projective plane quotient") {
  auto d = alt_l53();
  const IntVector nu = iv({1, 1, 2});
  const IntMatrix G = worked_basis();
  CHECK(G * nu == iv({0, 0, 1}));
  auto q = quotient_polytope(d, nu, G);
  CHECK(q.r == 2);
  CHECK_FALSE(q.smooth);

  std::set<std::pair<IntVector, Int>> halfspaces;
  for (std::size_t j = 0; j < q.base.normals().size(); ++j) halfspaces.insert({q.base.normals()[j], q.base.offsets()[j]});
  CHECK(halfspaces == std::set<std::pair<IntVector, Int>>{{iv({1, 0}), Int(0)}, {iv({-1, -1}), Int(1)}, {iv({-3, 1}), Int(2)}});

  std::vector<Int> iso = vertex_isotropy(q);
  std::sort(iso.begin(), iso.end());
  CHECK(iso == ints({1, 1, 4}));

  REQUIRE(q.sectors.size() == 4);
  std::vector<Rat> Ts;
  for (const auto& s : q.sectors) Ts.push_back(s.T);
  CHECK(Ts == std::vector<Rat>{testing::q(1, 4), testing::q(1, 2), testing::q(3, 4), Rat(1)});
  for (std::size_t k = 0; k < 3; ++k) {
    REQUIRE(q.sectors[k].components.size() == 1);
    const auto& c = q.sectors[k].components.front();
    CHECK(c.shift == Rat(static_cast<long>(k) + 1));
    CHECK(c.face.size() == 2);
    CHECK(c.dimension == 0);
    CHECK(c.h == ints({1}));
  }
  REQUIRE(q.sectors.back().components.size() == 1);
  CHECK(q.sectors.back().components.front().face.empty());
  CHECK(q.sectors.back().components.front().h == ints({1, 1, 1}));

  auto horb = orbifold_cohomology_of_base(q);
  std::vector<long> dims;
  for (long j = 0; j <= 4; ++j) dims.push_back(horb.at(Rat(j)).get_si());
  CHECK(dims == std::vector<long>{1, 1, 2, 1, 1});
  // only half-integral degrees 0..4 carry classes
  Int total = 0;
  for (const auto& [deg, c] : horb.entries()) total += c;
  CHECK(total == 6);

  GradedDimension w(0, 12, 1);
  CHECK(row(hc_sector_contribution(q, q.sectors[3], w), 12) == std::vector<long>{0, 1, 1, 2, 1, 2, 1});
  CHECK(row(hc_sector_contribution(q, q.sectors[0], w), 12) == std::vector<long>{1, 0, 1, 0, 1, 0, 1});
  CHECK(row(hc_sector_contribution(q, q.sectors[1], w), 12) == std::vector<long>{0, 1, 0, 1, 0, 1, 0});
  CHECK(row(hc_sector_contribution(q, q.sectors[2], w), 12) == std::vector<long>{0, 0, 1, 0, 1, 0, 1});
  auto hc = hc_from_quotient(q, w);
  CHECK(row(hc, 12) == std::vector<long>{1, 2, 3, 3, 3, 3, 3});
  CHECK(hc == contact_betti_from_delta(d, w));

  // the same quotient with the library's own basis
  auto q2 = quotient_polytope(d, nu);
  CHECK(q2.basis * nu == iv({0, 0, 1}));
  CHECK(hc_from_quotient(q2, w) == hc);
  CHECK(sector_keys(q2) == sector_keys(q));

  try {
    hc_smooth_base(q, w);
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::BaseNotSmooth);
  }
}

TEST_CASE("prequantization tables agree across formulas") {
  for (const auto& t : tables()) {
    INFO(t.name);
    GradedDimension w(0, 10, 1);
    auto q = quotient_of_labelled(t.p);
    CHECK(q.smooth);
    auto ld = diagram_from_labelled(t.p);
    auto a = hc_smooth_base(t.p, w);
    CHECK(row(a, 10) == t.totals);
    CHECK(hc_smooth_base(q, w) == a);
    CHECK(hc_from_quotient(q, w) == a);
    CHECK(contact_betti_from_delta(ld.diagram, w) == a);
    CHECK(contact_betti_direct(ld.diagram, default_reeb(ld.diagram), w) == a);
  }
}

TEST_CASE("fundamental group and minimal chern number") {
  std::map<std::string, std::pair<long, long>> want{{"S5", {1, 3}}, {"L53", {3, 3}}, {"S*S3", {1, 2}}, {"S*RP3", {2, 2}}};
  for (const auto& t : tables()) {
    auto q = quotient_of_labelled(t.p);
    auto [p, c] = want.at(t.name);
    CHECK(fundamental_group_order(q.normals) == p);
    CHECK(fundamental_group_order(diagram_from_labelled(t.p).diagram) == p);
    CHECK(minimal_chern(q) == c);
    CHECK(minimal_chern(q) == gorenstein_r(t.p)->r * p);
  }
  CHECK(fundamental_group_order(l53()) == 3);
  CHECK(fundamental_group_order(alt_l53()) == 3);
}

TEST_CASE("twisted sectors against a parallelepiped scan") {
  std::vector<std::pair<ToricDiagram, IntVector>> cases{
      {alt_l53(), iv({1, 1, 2})}, {l53(), iv({0, 0, 1})}, {flop(), iv({1, 1, 1})},
      {alt_l53(), iv({3, 2, 3})}, {l53(), iv({1, 0, 3})},
  };
  for (const auto& e : corpus())
    if (e.document.kind == Document::Kind::Diagram && e.document.reeb)
      cases.push_back({validate_diagram(convex_hull(e.document.vertices)), *e.document.reeb});

  for (const auto& [d, nu] : cases) {
    auto q = quotient_polytope(d, nu);
    CHECK(sector_keys(q) == sector_oracle(d, nu));

    // every sector solves the membership relation with coefficients in (0,1)
    for (const auto& s : q.sectors) {
      CHECK(s.T > 0);
      CHECK(s.T <= 1);
      for (const auto& c : s.components) {
        RatVector x(nu.size());
        for (std::size_t i = 0; i < nu.size(); ++i) x[i] = s.T * Rat(nu[i]);
        for (std::size_t j = 0; j < c.face.size(); ++j) {
          CHECK(c.coefficients[j] > 0);
          CHECK(c.coefficients[j] < 1);
          for (std::size_t i = 0; i < nu.size(); ++i) x[i] += c.coefficients[j] * Rat(d.normals()[c.face[j]][i]);
        }
        for (const auto& xi : x) CHECK(xi.get_den() == 1);
        CHECK(c.dimension == 2 * (d.dimension() - c.face.size()));
      }
      // components of one sector are disjoint faces of the base
      for (std::size_t a = 0; a < s.components.size(); ++a)
        for (std::size_t b = a + 1; b < s.components.size(); ++b) {
          auto fa = q.base.face_of(s.components[a].face).vertices;
          auto fb = q.base.face_of(s.components[b].face).vertices;
          std::vector<std::size_t> common;
          std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(common));
          CHECK(common.empty());
        }
    }
    REQUIRE_FALSE(q.sectors.empty());
    CHECK(q.sectors.back().T == 1);
    CHECK(q.sectors.back().components.size() == 1);

    // each base vertex lies in as many sectors as its isotropy group has elements
    auto iso = vertex_isotropy(q);
    std::vector<Int> census(iso.size());
    for (const auto& s : q.sectors)
      for (const auto& c : s.components)
        for (auto v : q.base.face_of(c.face).vertices) census[v] += 1;
    CHECK(census == iso);
    bool all_one = std::all_of(iso.begin(), iso.end(), [](const Int& x) { return x == 1; });
    CHECK(q.smooth == all_one);

    // the base reads back as a labelled polytope with the same contact homology
    if (d.order() == 1) {
      auto w = default_window(Int(1), d.dimension());
      CHECK(hc_from_quotient(q, w) == contact_betti_from_delta(d, w));
      auto back = diagram_from_labelled(q.base);
      CHECK(delta_vector(back.diagram.polytope()).delta == delta_vector(d.polytope()).delta);
    }
  }
}

TEST_CASE("quotient errors") {
  auto d = alt_l53();
  try {
    quotient_polytope(d, iv({2, 2, 4}));
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::NotPrimitive);
  }
  try {
    quotient_polytope(d, iv({0, 0, 1}));
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::NotInterior);
  }
  try {
    quotient_polytope(d, iv({1, 1, -2}));
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::NotInterior);
  }
  auto o = quotient_polytope(order3(), iv({1, 1, 2}));
  CHECK(o.order == 3);
  try {
    hc_from_quotient(o, GradedDimension(0, 8, 1));
    FAIL("expected an error");
  } catch (const PrequantError& e) {
    CHECK(e.kind() == PrequantError::Kind::OrderNotOne);
  }
  CHECK_THROWS_AS(quotient_polytope(d, iv({1, 1, 2}), IntMatrix::identity(3)), LatticeError);
}

// order-one quotients: delta_(n-k) collects the base's orbifold Betti numbers in degrees [2k, 2k+2)
TEST_CASE("delta rounds the orbifold cohomology of an order one base") {
  auto skew = diagram({rv({-1, -1}), rv({2, 0}), rv({0, 1})});
  std::vector<std::pair<ToricDiagram, IntVector>> cases{
      {l53(), iv({0, 0, 1})},
      {diagram({rv({0, 0}), rv({1, 0}), rv({2, 3})}), iv({1, 1, 1})},
      {flop(), iv({1, 1, 1})},
      {diagram({rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1}), rv({-1, -1, -1})}), iv({0, 0, 0, 1})},
      {skew, iv({0, 0, 1})},
      {skew, iv({1, 0, 1})}};
  bool saw_singular = false;
  for (const auto& [d, nu] : cases) {
    auto base = quotient_polytope(d, nu);
    saw_singular = saw_singular || !base.smooth;
    auto h = orbifold_cohomology_of_base(base);
    auto delta = delta_vector(d.polytope()).delta;
    const long n = static_cast<long>(delta.size()) - 1;
    for (long k = 0; k <= n; ++k) {
      Int sum = 0;
      for (const auto& [deg, dim] : h.entries())
        if (deg >= Rat(2 * k) && deg < Rat(2 * k + 2)) sum += dim;
      CHECK(sum == delta[static_cast<std::size_t>(n - k)]);
    }
  }
  CHECK(saw_singular);
}
