#include "torcon/prequant.hpp"

#include <algorithm>
#include <set>

#include "torcon/cone.hpp"
#include "torcon/resolution.hpp"

namespace torcon {

namespace {

bool all_ones(const std::vector<Int>& inv, std::size_t expected) {
  return inv.size() == expected && std::all_of(inv.begin(), inv.end(), [](const Int& x) { return x == 1; });
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IntVector head(const IntVector& v, std::size_t n) { return IntVector(v.begin(), v.begin() + static_cast<long>(n)); }

// every subset of every facet, the empty face included
std::set<std::vector<std::size_t>> diagram_faces(const ToricDiagram& d) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& f : d.facets()) {
    const auto& vs = f.vertices;
    for (std::size_t mask = 0; mask < (std::size_t(1) << vs.size()); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (mask >> i & 1) s.push_back(vs[i]);
      out.insert(s);
    }
  }
  return out;
}

void check_reeb_point(const ToricDiagram& d, const IntVector& nu) {
  const std::size_t n = d.dimension();
  if (nu.size() != n + 1) throw PrequantError(PrequantError::Kind::NotInterior, "Reeb vector has the wrong length");
  if (gcd_of(nu) != 1) throw PrequantError(PrequantError::Kind::NotPrimitive, "Reeb vector is not primitive");
  if (nu[n] < 1) throw PrequantError(PrequantError::Kind::NotInterior, "last coordinate of the Reeb vector must be positive");
  RatVector p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = ratio(nu[i], nu[n]);
  if (!d.polytope().in_interior(p))
    throw PrequantError(PrequantError::Kind::NotInterior, "Reeb vector is not interior to the diagram");
}

}  // namespace

GoodCone good_cone_certificate(const std::vector<IntVector>& normals) {
  for (std::size_t j = 0; j < normals.size(); ++j)
    if (gcd_of(normals[j]) != 1)
      throw PrequantError(PrequantError::Kind::NotPrimitive, "normal " + std::to_string(j) + " is not primitive");
  GoodCone gc;
  gc.normals = normals;
  try {
    gc.rays = extreme_rays(normals);
  } catch (const GeometryError& e) {
    throw PrequantError(PrequantError::Kind::NotStrictlyConvex, e.what());
  }
  const std::size_t dim = normals.front().size();

  std::vector<std::vector<std::size_t>> zero;
  for (const auto& r : gc.rays) {
    std::vector<std::size_t> z;
    for (std::size_t j = 0; j < normals.size(); ++j)
      if (dot(r, normals[j]) == 0) z.push_back(j);
    zero.push_back(std::move(z));
  }
  std::set<std::vector<std::size_t>> tight(zero.begin(), zero.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<std::size_t>> cur(tight.begin(), tight.end());
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b)
        if (tight.insert(intersect(cur[a], cur[b])).second) grew = true;
  }

  for (const auto& z : tight) {
    ConeFace f;
    f.normals = z;
    std::vector<IntVector> rs;
    for (std::size_t i = 0; i < gc.rays.size(); ++i)
      if (std::includes(zero[i].begin(), zero[i].end(), z.begin(), z.end())) {
        f.rays.push_back(i);
        rs.push_back(gc.rays[i]);
      }
    f.codimension = dim - rank(IntMatrix::from_rows(rs));
    if (!z.empty()) {
      std::vector<IntVector> sys;
      for (auto j : z) sys.push_back(normals[j]);
      f.invariants = smith_invariants(IntMatrix::from_rows(sys));
    }
    f.good = z.size() == f.codimension && all_ones(f.invariants, z.size());
    gc.faces.push_back(std::move(f));
  }
  std::stable_sort(gc.faces.begin(), gc.faces.end(),
                   [](const ConeFace& a, const ConeFace& b) { return a.codimension < b.codimension; });
  gc.good = true;
  for (std::size_t i = 0; i < gc.faces.size(); ++i)
    if (!gc.faces[i].good) {
      gc.good = false;
      gc.failing = i;
      break;
    }
  return gc;
}

bool is_good_cone(const std::vector<IntVector>& normals) { return good_cone_certificate(normals).good; }

std::vector<IntVector> cone_normals(const LabelledPolytope& p) {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < p.normals().size(); ++j) {
    IntVector nu = p.normals()[j];
    nu.push_back(p.offsets()[j]);
    out.push_back(std::move(nu));
  }
  return out;
}

std::optional<GorensteinData> gorenstein_r(const LabelledPolytope& p) {
  auto nus = cone_normals(p);
  RatVector ones(nus.size(), Rat(1));
  auto sol = solve(to_rational(IntMatrix::from_rows(nus)), ones);
  if (!sol) return std::nullopt;
  const std::size_t n = p.dimension();
  GorensteinData g;
  for (std::size_t i = 0; i < n; ++i) {
    if ((*sol)[i].get_den() != 1) return std::nullopt;
    g.w.push_back((*sol)[i].get_num());
  }
  if ((*sol)[n].get_den() != 1 || (*sol)[n] < 1) return std::nullopt;
  g.r = (*sol)[n].get_num();
  return g;
}

LabelledDiagram diagram_from_labelled(const LabelledPolytope& p) {
  auto g = gorenstein_r(p);
  if (!g) throw PrequantError(PrequantError::Kind::NotGorenstein, "no integral (w, r) takes the value 1 on every normal");
  IntVector f = g->w;
  f.push_back(g->r);
  auto rows = unimodular_completion({f});
  rows.push_back(f);
  LabelledDiagram out{IntMatrix::from_rows(rows), {}, {}};
  std::vector<RatVector> pts;
  for (const auto& nu : cone_normals(p)) {
    IntVector img = out.basis * nu;
    pts.push_back(to_rational(head(img, p.dimension())));
    out.images.push_back(std::move(img));
  }
  out.diagram = validate_diagram(convex_hull(pts));
  if (out.diagram.polytope().vertices().size() != pts.size())
    throw PrequantError(PrequantError::Kind::NotGood, "some normal is not a vertex of the diagram");
  return out;
}

std::vector<TwistedSector> twisted_sectors(const ToricDiagram& d, const IntVector& nu, const LabelledPolytope& base) {
  const std::size_t n = d.dimension();
  std::map<Rat, std::vector<SectorComponent>> byT;
  for (const auto& J : diagram_faces(d)) {
    std::vector<IntVector> cols;
    for (auto j : J) cols.push_back(d.normals()[j]);
    IntMatrix b = IntMatrix::identity(n + 1);
    if (!J.empty()) {
      if (lattice_index(cols) != 1)
        throw PrequantError(PrequantError::Kind::NotGood, "face normals do not extend to a basis");
      for (auto& w : unimodular_completion(cols)) cols.push_back(std::move(w));
      b = IntMatrix::from_columns(cols);
    }
    IntVector a = unimodular_inverse(b) * nu;
    const std::size_t k = J.size();
    Int g = gcd_of(IntVector(a.begin() + static_cast<long>(k), a.end()));
    for (Int s = 1; s <= g; ++s) {
      Rat T = ratio(s, g);
      SectorComponent c;
      c.face = J;
      bool twisted = true;
      for (std::size_t i = 0; i < k; ++i) {
        Rat cj = frac(-T * a[i]);
        if (cj == 0) twisted = false;
        c.coefficients.push_back(cj);
        c.shift += 2 * cj;
      }
      if (!twisted) continue;
      c.dimension = 2 * (n - k);
      c.h = face_h_polynomial(base.geometry(), base.face_of(J));
      byT[T].push_back(std::move(c));
    }
  }
  std::vector<TwistedSector> out;
  for (auto& [T, comps] : byT) out.push_back(TwistedSector{T, std::move(comps)});
  return out;
}

QuotientData quotient_polytope(const ToricDiagram& d, const IntVector& nu) {
  check_reeb_point(d, nu);
  auto cols = unimodular_completion({nu});
  cols.push_back(nu);
  return quotient_polytope(d, nu, unimodular_inverse(IntMatrix::from_columns(cols)));
}

QuotientData quotient_polytope(const ToricDiagram& d, const IntVector& nu, const IntMatrix& basis) {
  check_reeb_point(d, nu);
  const std::size_t n = d.dimension();
  Int det = determinant(basis);
  if (det != 1 && det != -1) throw LatticeError(LatticeError::Kind::NotUnimodularSystem, "quotient basis is not unimodular");
  IntVector e(n + 1);
  e[n] = 1;
  if (basis * nu != e) throw LatticeError(LatticeError::Kind::Shape, "quotient basis does not send the Reeb vector to the last unit vector");
  std::vector<IntVector> vs;
  std::vector<Int> bs;
  for (const auto& x : d.normals()) {
    IntVector img = basis * x;
    bs.push_back(img[n]);
    vs.push_back(head(img, n));
  }
  QuotientData q{nu, nu[n], d.order(), basis, d.normals(), LabelledPolytope(vs, bs), {}, false};
  q.sectors = twisted_sectors(d, nu, q.base);
  auto iso = vertex_isotropy(q);
  q.smooth = std::all_of(iso.begin(), iso.end(), [](const Int& x) { return x == 1; });
  return q;
}

QuotientData quotient_of_labelled(const LabelledPolytope& p) {
  auto ld = diagram_from_labelled(p);
  const std::size_t n = p.dimension();
  // the Reeb vector e_{n+1} in the new coordinates
  return quotient_polytope(ld.diagram, ld.basis.col(n));
}

std::vector<Int> vertex_isotropy(const QuotientData& q) {
  std::vector<Int> out;
  const auto& geo = q.base.geometry();
  for (std::size_t v = 0; v < geo.vertices().size(); ++v) {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < q.normals.size(); ++j) {
      const auto& f = geo.facets()[q.base.facet_of_halfspace()[j]];
      if (std::binary_search(f.vertices.begin(), f.vertices.end(), v)) cols.push_back(q.normals[j]);
    }
    cols.push_back(q.nu);
    Int det = determinant(IntMatrix::from_columns(cols));
    out.push_back(abs(det));
  }
  return out;
}

GradedDimension orbifold_cohomology_of_base(const QuotientData& q) {
  Int den = 1;
  for (const auto& s : q.sectors)
    for (const auto& c : s.components) den = lcm(den, Rat(c.shift / 2).get_den());
  GradedDimension out(Rat(0), Rat(static_cast<long>(2 * q.base.dimension())), den);
  for (const auto& s : q.sectors)
    for (const auto& c : s.components)
      for (std::size_t i = 0; i < c.h.size(); ++i) out.add(c.shift + Rat(static_cast<long>(2 * i)), c.h[i]);
  return out;
}

GradedDimension hc_sector_contribution(const QuotientData& q, const TwistedSector& s, const GradedDimension& window) {
  if (q.order != 1) throw PrequantError(PrequantError::Kind::OrderNotOne, "quotient formula needs a diagram of order 1");
  GradedDimension out(window.lo(), window.hi(), window.step_den());
  const Rat period = 2 * Rat(q.r);
  for (const auto& c : s.components) {
    Rat base_degree = c.shift + period * s.T - 2;
    for (Rat shift = base_degree; shift <= window.hi(); shift += period)
      for (std::size_t i = 0; i < c.h.size(); ++i) out.add(shift + Rat(static_cast<long>(2 * i)), c.h[i]);
  }
  return out;
}

GradedDimension hc_from_quotient(const QuotientData& q, const GradedDimension& window) {
  GradedDimension out(window.lo(), window.hi(), window.step_den());
  for (const auto& s : q.sectors) {
    auto part = hc_sector_contribution(q, s, window);
    for (const auto& [deg, dim] : part.entries()) out.add(deg, dim);
  }
  return out;
}

namespace {

GradedDimension bourgeois(const IntPolynomial& h, const Int& r, const GradedDimension& window) {
  GradedDimension out(window.lo(), window.hi(), window.step_den());
  const Rat period = 2 * Rat(r);
  for (Rat shift = period - 2; shift <= window.hi(); shift += period)
    for (std::size_t i = 0; i < h.size(); ++i) out.add(shift + Rat(static_cast<long>(2 * i)), h[i]);
  return out;
}

IntPolynomial polytope_h(const RationalPolytope& p) { return face_h_polynomial(p, p.all_faces().back()); }

}  // namespace

GradedDimension hc_smooth_base(const QuotientData& q, const GradedDimension& window) {
  if (!q.smooth) throw PrequantError(PrequantError::Kind::BaseNotSmooth, "base has orbifold points");
  return bourgeois(polytope_h(q.base.geometry()), q.r, window);
}

GradedDimension hc_smooth_base(const LabelledPolytope& p, const GradedDimension& window) {
  auto g = gorenstein_r(p);
  if (!g) throw PrequantError(PrequantError::Kind::NotGorenstein, "labelled polytope is not r-Gorenstein");
  const auto& geo = p.geometry();
  for (std::size_t v = 0; v < geo.vertices().size(); ++v) {
    std::vector<IntVector> rows;
    for (std::size_t j = 0; j < p.normals().size(); ++j) {
      const auto& f = geo.facets()[p.facet_of_halfspace()[j]];
      if (std::binary_search(f.vertices.begin(), f.vertices.end(), v)) rows.push_back(p.normals()[j]);
    }
    Int det = determinant(IntMatrix::from_rows(rows));
    if (det != 1 && det != -1) throw PrequantError(PrequantError::Kind::BaseNotSmooth, "vertex " + std::to_string(v) + " is singular");
  }
  return bourgeois(polytope_h(geo), g->r, window);
}

Int fundamental_group_order(const std::vector<IntVector>& normals) {
  Int p = 1;
  for (const auto& x : smith_invariants(IntMatrix::from_rows(normals))) p *= x;
  return p;
}

Int fundamental_group_order(const ToricDiagram& d) { return fundamental_group_order(d.normals()); }

Int minimal_chern(const QuotientData& q) {
  if (!q.smooth) throw PrequantError(PrequantError::Kind::BaseNotSmooth, "minimal Chern number needs a smooth base");
  return q.r * fundamental_group_order(q.normals);
}

}  // namespace torcon
