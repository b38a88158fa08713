#include "torcon/contact.hpp"

#include <algorithm>

namespace torcon {

ToricDiagram validate_diagram(const RationalPolytope& p) {
  if (!p.is_simplicial()) throw ContactError(ContactError::Kind::NotSimplicial, "polytope is not simplicial");
  ToricDiagram d;
  d.polytope_ = p;
  d.order_ = order(p);
  for (const auto& v : p.vertices()) {
    IntVector nu(v.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) nu[i] = Rat(v[i] * d.order_).get_num();
    nu[v.size()] = d.order_;
    d.normals_.push_back(std::move(nu));
  }
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    std::vector<IntVector> sys;
    for (auto v : p.facets()[f].vertices) sys.push_back(d.normals_[v]);
    auto inv = smith_invariants(IntMatrix::from_rows(sys));
    bool ok = inv.size() == sys.size() && std::all_of(inv.begin(), inv.end(), [](const Int& x) { return x == 1; });
    if (!ok) throw ContactError(ContactError::Kind::FacetNotUnimodular, "facet " + std::to_string(f) + " is not unimodular", f);
  }
  return d;
}

std::optional<C1Order> c1_order(const std::vector<IntVector>& normals) {
  IntMatrix a = IntMatrix::from_rows(normals);
  auto sm = smith_form(a);
  IntVector ones(normals.size(), Int(1));
  IntVector pb = sm.P * ones;
  Int m = 1;
  for (std::size_t i = 0; i < pb.size(); ++i) {
    if (i < sm.invariants.size()) {
      const Int& di = sm.invariants[i];
      m = lcm(m, Int(di / gcd(di, pb[i])));
    } else if (pb[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector y(a.cols());
  for (std::size_t i = 0; i < sm.invariants.size(); ++i) y[i] = m * pb[i] / sm.invariants[i];
  return C1Order{m, sm.Q * y};
}

std::vector<Jet> ReebVector::normalized(const Int& m) const {
  std::vector<Jet> out;
  for (std::size_t i = 0; i < base.size(); ++i) out.emplace_back(base[i] * m, direction[i] * m);
  out.emplace_back(Rat(m), Rat(0));
  return out;
}

ReebVector default_reeb(const ToricDiagram& d, const Rat& t) {
  const auto& verts = d.polytope().vertices();
  const std::size_t n = d.dimension();
  ReebVector r{RatVector(n), RatVector(n)};
  for (const auto& v : verts)
    for (std::size_t i = 0; i < n; ++i) r.base[i] += v[i];
  for (auto& x : r.base) x /= Rat(static_cast<long>(verts.size()));
  Rat pw = 1;
  for (std::size_t i = 0; i < n; ++i) {
    r.direction[i] = pw;
    pw *= t;
  }
  return r;
}

void check_reeb(const ToricDiagram& d, const ReebVector& reeb) {
  const std::size_t n = d.dimension();
  if (reeb.base.size() != n || reeb.direction.size() != n)
    throw ContactError(ContactError::Kind::NotInterior, "Reeb vector has the wrong dimension");
  for (std::size_t f = 0; f < d.facets().size(); ++f) {
    const auto& fc = d.facets()[f];
    Rat value = dot(fc.normal, reeb.base) - fc.offset;
    Rat slope = dot(fc.normal, reeb.direction);
    if (value < 0 || (value == 0 && slope <= 0))
      throw ContactError(ContactError::Kind::NotInterior, "Reeb vector is not interior to facet " + std::to_string(f), f);
  }
}

OrbitFamily orbit_data(const ToricDiagram& d, std::size_t facet, const ReebVector& reeb) {
  std::vector<IntVector> vs;
  for (auto v : d.facets().at(facet).vertices) vs.push_back(d.normals()[v]);
  return orbit_data(d, facet, reeb, complete_to_basis(vs));
}

OrbitFamily orbit_data(const ToricDiagram& d, std::size_t facet, const ReebVector& reeb, const IntVector& eta) {
  const std::size_t n = d.dimension();
  OrbitFamily of;
  of.facet = facet;
  of.vertices = d.facets().at(facet).vertices;
  std::vector<IntVector> cols;
  for (auto v : of.vertices) cols.push_back(d.normals()[v]);
  cols.push_back(eta);
  IntMatrix basis = IntMatrix::from_columns(cols);
  Int det = determinant(basis);
  if (det != 1 && det != -1)
    throw ContactError(ContactError::Kind::FacetNotUnimodular, "eta does not complete the facet normals to a basis", facet);
  RatMatrix inv = *inverse(to_rational(basis));

  auto nu = reeb.normalized(d.order());
  RatVector val(n + 1), slope(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    val[i] = nu[i].value;
    slope[i] = nu[i].slope;
  }
  RatVector x = inv * val, y = inv * slope;
  for (std::size_t j = 0; j < n; ++j) of.coefficients.emplace_back(x[j], y[j]);
  of.b = Jet(x[n], y[n]);
  of.eta = eta;
  of.k = eta[n];
  if (of.b.sign() == 0)
    throw ContactError(ContactError::Kind::GenericityFailure, "Reeb vector lies in the facet hyperplane span", facet);
  if (of.b.sign() < 0) {
    of.b = -of.b;
    for (auto& e : of.eta) e = -e;
    of.k = -of.k;
  }
  return of;
}

Rat cz_index(const OrbitFamily& of, const Int& m, std::size_t n, const Int& iterate) {
  if (of.b.value == 0)
    throw ContactError(ContactError::Kind::IndexUnbounded, "orbit family has unbounded index", of.facet, iterate);
  Int floors = 0;
  for (std::size_t j = 0; j < of.coefficients.size(); ++j) {
    try {
      floors += jet_floor((of.coefficients[j] / of.b) * Rat(iterate));
    } catch (const LatticeError&) {
      throw ContactError(ContactError::Kind::GenericityFailure,
                         "degenerate floor at facet " + std::to_string(of.facet) + ", iterate " + iterate.get_str() +
                             ", coefficient " + std::to_string(j),
                         of.facet, iterate);
    }
  }
  return Rat(2) * (Rat(floors) + Rat(iterate) * Rat(of.k) / Rat(m)) + Rat(static_cast<long>(n));
}

Rat orbit_degree(const OrbitFamily& of, const Int& m, std::size_t n, const Int& iterate) {
  return cz_index(of, m, n, iterate) + Rat(static_cast<long>(n)) - 2;
}

Int iterate_bound(const OrbitFamily& of, const Rat& max_degree) {
  return ceil_rat(of.b.value * (max_degree / 2 + 1)) + 1;
}

GradedDimension contact_betti_direct(const ToricDiagram& d, const ReebVector& reeb, const GradedDimension& window) {
  check_reeb(d, reeb);
  GradedDimension out(window.lo(), window.hi(), d.order());
  for (std::size_t f = 0; f < d.facets().size(); ++f) {
    OrbitFamily of = orbit_data(d, f, reeb);
    if (of.b.value == 0) continue;  // every iterate has infinite degree in the limit
    Int bound = iterate_bound(of, window.hi());
    for (Int N = 1; N <= bound; ++N) out.add(orbit_degree(of, d.order(), d.dimension(), N), 1);
  }
  return out;
}

GradedDimension contact_betti_from_delta(const DeltaVector& dv, const GradedDimension& window) {
  GradedDimension out(window.lo(), window.hi(), dv.m);
  const Int len = Int(static_cast<unsigned long>(dv.delta.size()));
  for (const auto& deg : out.degrees()) {
    Rat first = (Rat(static_cast<long>(dv.n)) - deg / 2) * Rat(dv.m);
    if (first.get_den() != 1) continue;
    Int total = 0;
    for (Int idx = first.get_num(); idx < len; idx += dv.m)
      if (idx >= 0) total += dv.delta[idx.get_ui()];
    out.add(deg, total);
  }
  return out;
}

GradedDimension contact_betti_from_delta(const ToricDiagram& d, const GradedDimension& window) {
  return contact_betti_from_delta(delta_vector(d.polytope()), window);
}

Rat mean_euler_characteristic(const ToricDiagram& d) {
  Rat scale = 1;
  for (std::size_t i = 0; i < d.dimension(); ++i) scale *= Rat(d.order());
  return Rat(d.order()) / 2 * scale * normalized_volume(d.polytope());
}

Rat minimal_discrepancy(const ToricDiagram& d) {
  for (Int s = 1;; ++s)
    if (count_points(d.polytope(), s, Region::Interior) > 0) return ratio(s, d.order()) - 1;
}

}  // namespace torcon
