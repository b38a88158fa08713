#include "torcon/resolution.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "torcon/cone.hpp"

namespace torcon {

namespace {

bool integral_after_scaling(const RatVector& p, const Int& m) {
  for (const auto& x : p)
    if (Rat(x * m).get_den() != 1) return false;
  return true;
}

std::vector<std::size_t> set_union(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Is there a circuit of the union with positive part in a and negative part in b?
bool improper_pair(const std::vector<RatVector>& pts, const std::vector<std::size_t>& a,
                   const std::vector<std::size_t>& b) {
  const std::vector<std::size_t> all = set_union(a, b);
  const std::size_t n = pts.front().size();
  const std::size_t total = all.size();
  const std::size_t max_size = std::min(total, n + 2);
  std::vector<std::size_t> pick;
  // enumerate subsets by bitmask; sizes are tiny
  for (std::size_t mask = 1; mask < (std::size_t(1) << total); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size < 2 || size > max_size) continue;
    pick.clear();
    for (std::size_t i = 0; i < total; ++i)
      if (mask & (std::size_t(1) << i)) pick.push_back(all[i]);
    RatMatrix m(n + 1, size);
    for (std::size_t c = 0; c < size; ++c) {
      for (std::size_t r = 0; r < n; ++r) m(r, c) = pts[pick[c]][r];
      m(n, c) = 1;
    }
    auto ker = nullspace(m);
    if (ker.size() != 1) continue;
    const RatVector& lam = ker.front();
    if (std::any_of(lam.begin(), lam.end(), [](const Rat& x) { return x == 0; })) continue;
    std::vector<std::size_t> plus, minus;
    for (std::size_t c = 0; c < size; ++c) (lam[c] > 0 ? plus : minus).push_back(pick[c]);
    if ((subset(plus, a) && subset(minus, b)) || (subset(minus, a) && subset(plus, b))) return true;
  }
  return false;
}

IntPolynomial one_minus_q_power(std::size_t e) {
  IntPolynomial p{Int(1)};
  for (std::size_t i = 0; i < e; ++i) p = multiply(p, IntPolynomial{Int(1), Int(-1)});
  return p;
}

void add_shifted(IntPolynomial& acc, const IntPolynomial& p, std::size_t shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += p[i];
}

void trim(IntPolynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntVector wall_normal(const std::vector<IntVector>& gens) {
  const std::size_t d = gens.front().size();
  IntVector out(d);
  for (std::size_t skip = 0; skip < d; ++skip) {
    IntMatrix minor(gens.size(), d - 1);
    for (std::size_t r = 0; r < gens.size(); ++r)
      for (std::size_t c = 0, cc = 0; c < d; ++c) {
        if (c == skip) continue;
        minor(r, cc++) = gens[r][c];
      }
    Int det = determinant(minor);
    out[skip] = skip % 2 == 0 ? det : Int(-det);
  }
  return primitive(out);
}

RatVector cartier_on(const Fan& f, const std::vector<std::size_t>& cone, const std::vector<Rat>& values) {
  RatMatrix a(cone.size(), f.ambient);
  RatVector b(cone.size());
  for (std::size_t i = 0; i < cone.size(); ++i) {
    for (std::size_t j = 0; j < f.ambient; ++j) a(i, j) = f.rays[cone[i]][j];
    b[i] = values[cone[i]];
  }
  return *solve(a, b);
}

GradedDimension cb_from_series(const RatSeries& series, std::size_t n, const GradedDimension& window, const Int& m) {
  GradedDimension out(window.lo(), window.hi(), m);
  for (const auto& deg : out.degrees()) {
    Rat start = Rat(static_cast<long>(n)) - deg / 2;
    Int total = 0;
    for (const auto& [k, c] : series) {
      Rat diff = k - start;
      if (diff >= 0 && diff.get_den() == 1) total += c;
    }
    out.add(deg, total);
  }
  return out;
}

}  // namespace

Triangulation star_triangulation(const ToricDiagram& d, const RatVector& p) {
  if (p.size() != d.dimension() || !integral_after_scaling(p, d.order()))
    throw ResolutionError(ResolutionError::Kind::PointNotRational, "star point is not in (1/m)Z^n");
  if (!d.polytope().in_interior(p))
    throw ResolutionError(ResolutionError::Kind::PointNotInterior, "star point is not interior");
  Triangulation t{d.order(), d.polytope().vertices(), {}};
  const std::size_t centre = t.points.size();
  t.points.push_back(p);
  for (const auto& f : d.facets()) {
    auto cell = f.vertices;
    cell.push_back(centre);
    std::sort(cell.begin(), cell.end());
    t.cells.push_back(std::move(cell));
  }
  std::sort(t.cells.begin(), t.cells.end());
  return t;
}

Triangulation trivial_triangulation(const ToricDiagram& d) {
  Triangulation t{d.order(), d.polytope().vertices(), pulling_triangulation(d.polytope(), 0)};
  return t;
}

Triangulation make_triangulation(const ToricDiagram& d, const std::vector<RatVector>& extra_points,
                                 std::vector<std::vector<std::size_t>> cells) {
  Triangulation t{d.order(), d.polytope().vertices(), {}};
  t.points.insert(t.points.end(), extra_points.begin(), extra_points.end());
  for (auto& c : cells) {
    std::sort(c.begin(), c.end());
    for (auto i : c)
      if (i >= t.points.size()) throw ResolutionError(ResolutionError::Kind::BadCell, "cell index out of range");
  }
  std::sort(cells.begin(), cells.end());
  t.cells = std::move(cells);
  return t;
}

TriangulationReport validate_triangulation(const ToricDiagram& d, const Triangulation& t) {
  const std::size_t n = d.dimension();
  for (const auto& p : t.points) {
    if (p.size() != n || !integral_after_scaling(p, d.order()))
      throw ResolutionError(ResolutionError::Kind::NotRational, "triangulation point not in (1/m)Z^n");
    if (!d.polytope().contains(p))
      throw ResolutionError(ResolutionError::Kind::NotCovering, "triangulation point outside the diagram");
  }
  TriangulationReport rep;
  rep.unimodular = d.order() == 1;
  for (const auto& c : t.cells) {
    if (c.size() != n + 1 || std::adjacent_find(c.begin(), c.end()) != c.end())
      throw ResolutionError(ResolutionError::Kind::BadCell, "cell is not an n-simplex");
    std::vector<RatVector> pts;
    for (auto i : c) {
      if (i >= t.points.size()) throw ResolutionError(ResolutionError::Kind::BadCell, "cell index out of range");
      pts.push_back(t.points[i]);
    }
    Rat vol = simplex_normalized_volume(pts);
    if (vol == 0) throw ResolutionError(ResolutionError::Kind::BadCell, "cell is degenerate");
    if (vol != 1) rep.unimodular = false;
    rep.volume += vol;
  }
  if (rep.volume != normalized_volume(d.polytope()))
    throw ResolutionError(ResolutionError::Kind::NotCovering, "cell volumes do not add up to the diagram");
  for (std::size_t a = 0; a < t.cells.size(); ++a)
    for (std::size_t b = a + 1; b < t.cells.size(); ++b)
      if (improper_pair(t.points, t.cells[a], t.cells[b]))
        throw ResolutionError(ResolutionError::Kind::ImproperIntersection,
                              "cells " + std::to_string(a) + " and " + std::to_string(b) + " intersect improperly");
  return rep;
}

std::size_t Fan::cone_index(const std::vector<std::size_t>& r) const {
  auto it = std::find(cones.begin(), cones.end(), r);
  if (it == cones.end()) throw ResolutionError(ResolutionError::Kind::BadCell, "not a cone of the fan");
  return static_cast<std::size_t>(it - cones.begin());
}

Fan fan_over(const Triangulation& t) {
  Fan f;
  f.order = t.order;
  f.ambient = t.points.front().size() + 1;
  f.crepant = true;
  for (const auto& p : t.points) {
    IntVector r(f.ambient);
    for (std::size_t i = 0; i + 1 < f.ambient; ++i) r[i] = Rat(p[i] * t.order).get_num();
    r.back() = t.order;
    if (gcd_of(r) != 1) f.crepant = false;
    f.rays.push_back(std::move(r));
  }
  std::set<std::vector<std::size_t>> all;
  for (const auto& c : t.cells) {
    const std::size_t k = c.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t(1) << i)) s.push_back(c[i]);
      all.insert(std::move(s));
    }
  }
  f.cones.assign(all.begin(), all.end());
  std::stable_sort(f.cones.begin(), f.cones.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& c : t.cells) f.maximal.push_back(f.cone_index(c));
  return f;
}

SupportFunction support_function(const Fan& f) {
  std::vector<IntVector> walls;
  for (const auto& c : f.cones) {
    if (c.size() + 1 != f.ambient) continue;
    std::vector<IntVector> gens;
    for (auto r : c) gens.push_back(f.rays[r]);
    walls.push_back(wall_normal(gens));
  }
  std::vector<Rat> values;
  for (const auto& r : f.rays) {
    Int total = 0;
    for (const auto& w : walls) total += abs(dot(r, w));
    values.emplace_back(total);
  }
  SupportFunction phi = support_function_from_values(f, values);
  if (is_strictly_convex(f, phi)) return phi;

  // A wall hyperplane can cut through another cell, and then the sum above is not
  // linear on cones. Search ray heights instead; a fixed seed keeps output stable.
  std::mt19937 rng(20240613);
  for (int round = 0; round < 4000; ++round) {
    const int bound = 2 + round / 100;
    std::uniform_int_distribution<int> height(0, bound);
    for (auto& v : values) v = height(rng);
    phi = support_function_from_values(f, values);
    if (is_strictly_convex(f, phi)) return phi;
  }
  throw ResolutionError(ResolutionError::Kind::NotStrictlyConvex,
                        "no strictly convex support function found; the triangulation may not be regular");
}

SupportFunction support_function_from_values(const Fan& f, const std::vector<Rat>& ray_values) {
  if (ray_values.size() != f.rays.size())
    throw ResolutionError(ResolutionError::Kind::BadCell, "one value per ray is required");
  SupportFunction phi{ray_values, {}};
  for (auto mi : f.maximal) phi.cartier.push_back(cartier_on(f, f.cones[mi], ray_values));
  return phi;
}

bool is_strictly_convex(const Fan& f, const SupportFunction& phi) {
  for (std::size_t a = 0; a < f.maximal.size(); ++a)
    for (std::size_t b = 0; b < f.maximal.size(); ++b) {
      if (a == b) continue;
      const auto& sa = f.cones[f.maximal[a]];
      const auto& sb = f.cones[f.maximal[b]];
      std::vector<std::size_t> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      if (common.size() + 1 != f.ambient) continue;
      for (auto u : sb) {
        if (std::binary_search(sa.begin(), sa.end(), u)) continue;
        if (!(phi.ray_values[u] > dot(f.rays[u], phi.cartier[a]))) return false;
      }
    }
  return true;
}

MomentPolyhedron moment_polyhedron(const Fan& f, const SupportFunction& phi) {
  if (!is_strictly_convex(f, phi))
    throw ResolutionError(ResolutionError::Kind::NotStrictlyConvex, "support function is not strictly convex");
  MomentPolyhedron mp;
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    mp.normals.push_back(f.rays[i]);
    mp.offsets.push_back(-phi.ray_values[i]);
    const Rat& v = phi.ray_values[i];
    IntVector row(f.ambient + 1);
    for (std::size_t j = 0; j < f.ambient; ++j) row[j] = f.rays[i][j] * v.get_den();
    row[f.ambient] = v.get_num();
    rows.push_back(std::move(row));
  }
  IntVector homog(f.ambient + 1);
  homog[f.ambient] = 1;
  rows.push_back(homog);

  std::set<RatVector> found;
  for (const auto& r : extreme_rays(rows)) {
    if (r[f.ambient] == 0) {
      mp.recession_rays.emplace_back(r.begin(), r.end() - 1);
      continue;
    }
    RatVector x(f.ambient);
    for (std::size_t j = 0; j < f.ambient; ++j) x[j] = ratio(r[j], r[f.ambient]);
    found.insert(x);
  }
  std::set<RatVector> expected;
  for (const auto& m : phi.cartier) {
    RatVector x(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) x[j] = -m[j];
    mp.vertices.push_back(x);
    expected.insert(x);
  }
  if (expected.size() != phi.cartier.size() || expected != found)
    throw ResolutionError(ResolutionError::Kind::NotStrictlyConvex, "Cartier data do not match the polyhedron vertices");
  std::sort(mp.recession_rays.begin(), mp.recession_rays.end());
  return mp;
}

std::vector<BoxElement> half_open_parallelepiped(const Fan& f, std::size_t cone) {
  const auto& c = f.cones.at(cone);
  const std::size_t k = c.size();
  if (k == 0) return {BoxElement{cone, IntVector(f.ambient), {}, Rat(0)}};
  std::vector<IntVector> gens;
  for (auto r : c) gens.push_back(f.rays[r]);
  auto sm = smith_form(IntMatrix::from_rows(gens));
  std::vector<Int> a(k, Int(0));
  std::vector<BoxElement> out;
  while (true) {
    RatVector coeff(k);
    for (std::size_t j = 0; j < k; ++j) {
      Rat cj = 0;
      for (std::size_t i = 0; i < k; ++i) cj += ratio(a[i], sm.invariants[i]) * Rat(sm.P(i, j));
      coeff[j] = frac(cj);
    }
    BoxElement e{cone, IntVector(f.ambient), coeff, Rat(0)};
    RatVector pt(f.ambient);
    for (std::size_t j = 0; j < k; ++j) {
      e.psi += coeff[j];
      for (std::size_t x = 0; x < f.ambient; ++x) pt[x] += coeff[j] * Rat(gens[j][x]);
    }
    for (std::size_t x = 0; x < f.ambient; ++x) {
      if (pt[x].get_den() != 1) throw std::logic_error("parallelepiped point is not integral");
      e.point[x] = pt[x].get_num();
    }
    out.push_back(std::move(e));
    std::size_t i = 0;
    while (i < k) {
      if (++a[i] < sm.invariants[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  std::sort(out.begin(), out.end(), [](const BoxElement& x, const BoxElement& y) { return x.point < y.point; });
  return out;
}

std::vector<BoxElement> box_elements(const Fan& f, std::size_t cone) {
  std::vector<BoxElement> out;
  for (auto& e : half_open_parallelepiped(f, cone))
    if (std::all_of(e.coefficients.begin(), e.coefficients.end(), [](const Rat& x) { return x > 0; }))
      out.push_back(std::move(e));
  return out;
}

IntPolynomial h_polynomial(const Fan& f, std::size_t cone) {
  const auto& tau = f.cones.at(cone);
  IntPolynomial acc;
  for (const auto& sigma : f.cones) {
    if (!subset(tau, sigma)) continue;
    add_shifted(acc, one_minus_q_power(f.ambient - sigma.size()), sigma.size() - tau.size());
  }
  trim(acc);
  for (const auto& x : acc)
    if (x < 0) throw std::logic_error("negative h-polynomial coefficient");
  return acc;
}

IntPolynomial face_h_polynomial(const RationalPolytope& p, const Face& face) {
  IntPolynomial acc;
  for (const auto& g : p.all_faces()) {
    if (!subset(g.vertices, face.vertices)) continue;
    add_shifted(acc, one_minus_q_power(static_cast<std::size_t>(g.dimension)),
                static_cast<std::size_t>(face.dimension - g.dimension));
  }
  trim(acc);
  for (const auto& x : acc)
    if (x < 0) throw std::logic_error("negative h-polynomial coefficient");
  return acc;
}

RatSeries orbifold_poincare_series(const Fan& f) {
  RatSeries s;
  for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
    auto box = box_elements(f, ci);
    if (box.empty()) continue;
    IntPolynomial h = h_polynomial(f, ci);
    for (const auto& e : box)
      for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] != 0) s[Rat(static_cast<long>(i)) + e.psi] += h[i];
  }
  return s;
}

GradedDimension orbifold_poincare(const Fan& f) {
  GradedDimension g(Rat(0), Rat(static_cast<long>(2 * f.ambient)), f.order);
  for (const auto& [k, c] : orbifold_poincare_series(f)) g.add(2 * k, c);
  return g;
}

StapledonReport stapledon_check(const ToricDiagram& d, const Triangulation& t) {
  validate_triangulation(d, t);
  Fan f = fan_over(t);
  StapledonReport rep;
  rep.series = orbifold_poincare_series(f);
  DeltaVector dv = delta_vector(d.polytope());
  rep.delta = dv.delta;
  const Int& m = d.order();

  auto mismatch = [](const Rat& j) {
    throw ResolutionError(ResolutionError::Kind::MismatchAt, "orbifold Poincare mismatch at j = " + to_string(j));
  };
  for (const auto& [j, c] : rep.series) {
    Rat idx = j * m;
    if (idx.get_den() != 1 || idx < 0 || idx >= Rat(static_cast<long>(dv.delta.size()))) mismatch(j);
    if (dv.delta[idx.get_num().get_ui()] != c) mismatch(j);
  }
  for (std::size_t i = 0; i < dv.delta.size(); ++i) {
    Rat j = ratio(Int(static_cast<unsigned long>(i)), m);
    if (dv.delta[i] != 0 && rep.series.count(j) == 0) mismatch(j);
  }

  // numerator of the Ehrhart series from raw counts, to a higher order
  const std::size_t mm = m.get_ui();
  const std::size_t top = 3 * mm * (d.dimension() + 1);
  std::vector<Int> counts(top + 1);
  for (std::size_t t2 = 0; t2 <= top; ++t2) counts[t2] = count_points(d.polytope(), Int(static_cast<unsigned long>(t2)));
  IntPolynomial factor{Int(1)};
  for (std::size_t i = 0; i <= d.dimension(); ++i) {
    IntPolynomial step(mm + 1);
    step[0] = 1;
    step[mm] = -1;
    factor = multiply(factor, step);
  }
  std::vector<Int> numer(top + 1);
  for (std::size_t i = 0; i < factor.size(); ++i)
    for (std::size_t t2 = 0; t2 + i <= top; ++t2) numer[t2 + i] += factor[i] * counts[t2];
  std::vector<Int> from_box(top + 1);
  for (const auto& [j, c] : rep.series) {
    Rat e = j * m;
    if (e.get_den() != 1 || e > Rat(static_cast<long>(top))) mismatch(j);
    from_box[e.get_num().get_ui()] += c;
  }
  for (std::size_t e = 0; e <= top; ++e)
    if (numer[e] != from_box[e]) mismatch(ratio(Int(static_cast<unsigned long>(e)), m));
  return rep;
}

GradedDimension hc_from_resolution(const ToricDiagram& d, const Triangulation& t, const GradedDimension& window) {
  validate_triangulation(d, t);
  return cb_from_series(orbifold_poincare_series(fan_over(t)), d.dimension(), window, d.order());
}

std::vector<SectorContribution> resolution_contributions(const ToricDiagram& d, const Triangulation& t,
                                                         const GradedDimension& window) {
  validate_triangulation(d, t);
  Fan f = fan_over(t);
  std::vector<SectorContribution> out;
  for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
    IntPolynomial h = h_polynomial(f, ci);
    for (const auto& e : box_elements(f, ci)) {
      RatSeries s;
      for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] != 0) s[Rat(static_cast<long>(i)) + e.psi] += h[i];
      out.push_back(SectorContribution{ci, e.coefficients, e.psi, s, cb_from_series(s, d.dimension(), window, d.order())});
    }
  }
  return out;
}

}  // namespace torcon
