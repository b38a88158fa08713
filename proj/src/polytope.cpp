#include "torcon/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "torcon/cone.hpp"

namespace torcon {

namespace {

std::vector<Face> build_faces(std::size_t dim, const std::vector<RatVector>& verts, const std::vector<Facet>& facets) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> queue;
  for (const auto& f : facets)
    if (seen.insert(f.vertices).second) queue.push_back(f.vertices);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& f : facets) {
      std::vector<std::size_t> inter;
      std::set_intersection(queue[qi].begin(), queue[qi].end(), f.vertices.begin(), f.vertices.end(),
                            std::back_inserter(inter));
      if (inter.empty()) continue;
      if (seen.insert(inter).second) queue.push_back(inter);
    }
  }
  std::vector<std::size_t> everything(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) everything[i] = i;
  queue.push_back(everything);

  std::vector<Face> out;
  for (const auto& vs : queue) {
    Face face;
    face.vertices = vs;
    std::vector<RatVector> pts;
    for (auto v : vs) pts.push_back(verts[v]);
    face.dimension = affine_dimension(pts);
    if (vs.size() == verts.size()) face.dimension = static_cast<int>(dim);
    for (std::size_t fi = 0; fi < facets.size(); ++fi)
      if (std::includes(facets[fi].vertices.begin(), facets[fi].vertices.end(), vs.begin(), vs.end()))
        face.facets.push_back(fi);
    if (vs.size() == verts.size()) face.facets.clear();
    out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertices < b.vertices;
  });
  return out;
}

struct Box {
  IntVector lo, hi;
};

Box bounding_box(const RationalPolytope& p, const Int& t) {
  const std::size_t n = p.dimension();
  Box b{IntVector(n), IntVector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rat lo = p.vertices().front()[i], hi = lo;
    for (const auto& v : p.vertices()) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    b.lo[i] = ceil_rat(lo * t);
    b.hi[i] = floor_rat(hi * t);
  }
  return b;
}

bool satisfies(const Facet& f, const IntVector& x, const Int& t, Region region) {
  Rat lhs = dot(f.normal, x);
  Rat rhs = f.offset * t;
  return region == Region::Closed ? lhs >= rhs : lhs > rhs;
}

}  // namespace

bool RationalPolytope::contains(const RatVector& x) const {
  for (const auto& f : facets_)
    if (dot(f.normal, x) < f.offset) return false;
  return true;
}

bool RationalPolytope::in_interior(const RatVector& x) const {
  for (const auto& f : facets_)
    if (dot(f.normal, x) <= f.offset) return false;
  return true;
}

bool RationalPolytope::is_simplicial() const {
  for (const auto& f : facets_)
    if (f.vertices.size() != dim_) return false;
  return true;
}

bool RationalPolytope::is_simple() const {
  for (const auto& face : faces_)
    if (face.dimension == 0 && face.facets.size() != dim_) return false;
  return true;
}

RationalPolytope RationalPolytope::scaled(const Rat& t) const {
  if (t <= 0) throw PolytopeError(PolytopeError::Kind::DegenerateInput, "scale factor must be positive");
  RationalPolytope p = *this;
  for (auto& v : p.vertices_)
    for (auto& x : v) x *= t;
  for (auto& f : p.facets_) f.offset *= t;
  return p;
}

RationalPolytope RationalPolytope::translated(const RatVector& shift) const {
  RationalPolytope p = *this;
  for (auto& v : p.vertices_)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += shift[i];
  for (auto& f : p.facets_) f.offset += dot(f.normal, shift);
  return p;
}

int affine_dimension(const std::vector<RatVector>& points) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  RatMatrix m(points.size() - 1, points.front().size());
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = 0; j < points[i].size(); ++j) m(i - 1, j) = points[i][j] - points[0][j];
  return static_cast<int>(rank(m));
}

RationalPolytope convex_hull(const std::vector<RatVector>& input) {
  if (input.empty()) throw PolytopeError(PolytopeError::Kind::DegenerateInput, "no points");
  const std::size_t n = input.front().size();
  if (n == 0) throw PolytopeError(PolytopeError::Kind::DegenerateInput, "zero-dimensional ambient space");
  std::vector<RatVector> pts;
  for (const auto& p : input) {
    if (p.size() != n) throw PolytopeError(PolytopeError::Kind::DegenerateInput, "points of mixed dimension");
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  if (affine_dimension(pts) != static_cast<int>(n))
    throw PolytopeError(PolytopeError::Kind::DegenerateInput, "points are not full-dimensional");

  std::vector<IntVector> rows;
  for (const auto& p : pts) {
    Int den = 1;
    for (const auto& x : p) den = lcm(den, Int(x.get_den()));
    IntVector row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = Rat(p[i] * den).get_num();
    row[n] = -den;
    rows.push_back(std::move(row));
  }
  auto rays = extreme_rays(rows);

  std::vector<Facet> facets;
  for (const auto& r : rays) {
    IntVector a(r.begin(), r.begin() + static_cast<long>(n));
    Int g = gcd_of(a);
    if (g == 0) continue;
    Facet f;
    for (auto& x : a) x /= g;
    f.normal = a;
    f.offset = Rat(r[n], g);
    f.offset.canonicalize();
    facets.push_back(std::move(f));
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<IntVector> tight;
    for (const auto& f : facets)
      if (dot(f.normal, pts[i]) == f.offset) tight.push_back(f.normal);
    if (!tight.empty() && rank(IntMatrix::from_rows(tight)) == n) keep.push_back(i);
  }

  RationalPolytope poly;
  poly.dim_ = n;
  for (auto i : keep) poly.vertices_.push_back(pts[i]);
  for (auto& f : facets)
    for (std::size_t v = 0; v < poly.vertices_.size(); ++v)
      if (dot(f.normal, poly.vertices_[v]) == f.offset) f.vertices.push_back(v);
  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
  poly.facets_ = std::move(facets);
  poly.faces_ = build_faces(n, poly.vertices_, poly.facets_);
  return poly;
}

RationalPolytope from_halfspaces(const std::vector<IntVector>& normals, const std::vector<Rat>& offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw PolytopeError(PolytopeError::Kind::DegenerateInput, "halfspace data has inconsistent length");
  const std::size_t n = normals.front().size();
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != n) throw PolytopeError(PolytopeError::Kind::DegenerateInput, "normals of mixed dimension");
    Int den = offsets[i].get_den();
    IntVector row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = normals[i][j] * den;
    row[n] = -offsets[i].get_num();
    rows.push_back(std::move(row));
  }
  IntVector homog(n + 1);
  homog[n] = 1;
  rows.push_back(homog);

  std::vector<IntVector> rays;
  try {
    rays = extreme_rays(rows);
  } catch (const GeometryError&) {
    throw PolytopeError(PolytopeError::Kind::NotBounded, "halfspaces do not bound a polytope");
  }
  std::vector<RatVector> verts;
  for (const auto& r : rays) {
    if (r[n] == 0) throw PolytopeError(PolytopeError::Kind::NotBounded, "halfspaces do not bound a polytope");
    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = Rat(r[j], r[n]);
      v[j].canonicalize();
    }
    verts.push_back(std::move(v));
  }
  std::sort(verts.begin(), verts.end());
  return convex_hull(verts);
}

Int order(const RationalPolytope& p) {
  Int m = 1;
  for (const auto& v : p.vertices())
    for (const auto& x : v) m = lcm(m, Int(x.get_den()));
  return m;
}

Int count_points_box(const RationalPolytope& p, const Int& t, Region region) {
  const std::size_t n = p.dimension();
  Box b = bounding_box(p, t);
  for (std::size_t i = 0; i < n; ++i)
    if (b.lo[i] > b.hi[i]) return 0;
  IntVector x = b.lo;
  Int count = 0;
  while (true) {
    bool inside = true;
    for (const auto& f : p.facets())
      if (!satisfies(f, x, t, region)) {
        inside = false;
        break;
      }
    if (inside) ++count;
    std::size_t i = 0;
    while (i < n) {
      if (x[i] < b.hi[i]) {
        ++x[i];
        break;
      }
      x[i] = b.lo[i];
      ++i;
    }
    if (i == n) break;
  }
  return count;
}

namespace {

// Visits every lattice point of t*P, scanning whole rows of the last coordinate.
template <class Visit>
void scan_rows(const RationalPolytope& p, const Int& t, Region region, Visit&& visit) {
  const std::size_t n = p.dimension();
  Box b = bounding_box(p, t);
  for (std::size_t i = 0; i < n; ++i)
    if (b.lo[i] > b.hi[i]) return;
  const std::size_t last = n - 1;
  IntVector x = b.lo;
  while (true) {
    Int lo = b.lo[last], hi = b.hi[last];
    bool ok = true;
    for (const auto& f : p.facets()) {
      Rat partial = 0;
      for (std::size_t j = 0; j < last; ++j) partial += Rat(f.normal[j] * x[j]);
      Rat rest = f.offset * t - partial;
      const Int& a = f.normal[last];
      if (a == 0) {
        if (region == Region::Closed ? rest > 0 : rest >= 0) {
          ok = false;
          break;
        }
        continue;
      }
      Rat bound = rest / Rat(a);
      if (a > 0) {
        Int l = region == Region::Closed ? ceil_rat(bound) : floor_rat(bound) + 1;
        if (l > lo) lo = l;
      } else {
        Int h = region == Region::Closed ? floor_rat(bound) : ceil_rat(bound) - 1;
        if (h < hi) hi = h;
      }
    }
    if (ok && lo <= hi) visit(x, lo, hi);
    std::size_t i = 0;
    while (i < last) {
      if (x[i] < b.hi[i]) {
        ++x[i];
        break;
      }
      x[i] = b.lo[i];
      ++i;
    }
    if (i == last) break;
  }
}

}  // namespace

Int count_points(const RationalPolytope& p, const Int& t, Region region) {
  Int count = 0;
  scan_rows(p, t, region, [&](const IntVector&, const Int& lo, const Int& hi) { count += hi - lo + 1; });
  return count;
}

std::vector<IntVector> lattice_points(const RationalPolytope& p, Region region) {
  std::vector<IntVector> out;
  const std::size_t last = p.dimension() - 1;
  scan_rows(p, Int(1), region, [&](const IntVector& x, const Int& lo, const Int& hi) {
    IntVector y = x;
    for (Int v = lo; v <= hi; ++v) {
      y[last] = v;
      out.push_back(y);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void pull(const RationalPolytope& p, const Face& face, const std::vector<std::size_t>& rank_of,
          std::vector<std::vector<std::size_t>>& out, std::vector<std::size_t>& apex) {
  if (face.vertices.size() == static_cast<std::size_t>(face.dimension) + 1) {
    std::vector<std::size_t> s = face.vertices;
    s.insert(s.end(), apex.begin(), apex.end());
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  std::size_t v = *std::min_element(face.vertices.begin(), face.vertices.end(),
                                    [&](std::size_t a, std::size_t b) { return rank_of[a] < rank_of[b]; });
  for (const auto& g : p.all_faces()) {
    if (g.dimension != face.dimension - 1) continue;
    if (!std::includes(face.vertices.begin(), face.vertices.end(), g.vertices.begin(), g.vertices.end())) continue;
    if (std::binary_search(g.vertices.begin(), g.vertices.end(), v)) continue;
    apex.push_back(v);
    pull(p, g, rank_of, out, apex);
    apex.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> pulling_triangulation(const RationalPolytope& p, std::size_t first_vertex) {
  const std::size_t nv = p.vertices().size();
  std::vector<std::size_t> rank_of(nv);
  for (std::size_t i = 0; i < nv; ++i) rank_of[i] = (i + nv - first_vertex % nv) % nv;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> apex;
  pull(p, p.all_faces().back(), rank_of, out, apex);
  std::sort(out.begin(), out.end());
  return out;
}

Rat simplex_normalized_volume(const std::vector<RatVector>& pts) {
  const std::size_t n = pts.front().size();
  if (pts.size() != n + 1) throw PolytopeError(PolytopeError::Kind::DegenerateInput, "not a simplex");
  RatMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  return abs(determinant(m));
}

Rat normalized_volume(const RationalPolytope& p, std::size_t first_vertex) {
  Rat total = 0;
  for (const auto& s : pulling_triangulation(p, first_vertex)) {
    std::vector<RatVector> pts;
    for (auto v : s) pts.push_back(p.vertices()[v]);
    total += simplex_normalized_volume(pts);
  }
  return total;
}

RationalPolytope dual_polytope(const RationalPolytope& p) {
  std::vector<RatVector> pts;
  for (const auto& f : p.facets()) {
    if (f.offset >= 0) throw PolytopeError(PolytopeError::Kind::OriginNotInterior, "origin is not an interior point");
    RatVector y(f.normal.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = Rat(f.normal[i]) / (-f.offset);
    pts.push_back(std::move(y));
  }
  return convex_hull(pts);
}

std::vector<Face> faces(const RationalPolytope& p, int dimension) {
  std::vector<Face> out;
  for (const auto& f : p.all_faces())
    if (f.dimension == dimension) out.push_back(f);
  return out;
}

LabelledPolytope::LabelledPolytope(std::vector<IntVector> normals, std::vector<Int> offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
  if (normals_.size() != offsets_.size())
    throw PolytopeError(PolytopeError::Kind::DegenerateInput, "normals and offsets differ in length");
  std::vector<Rat> offs;
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (gcd_of(normals_[i]) == 0) throw PolytopeError(PolytopeError::Kind::InvalidLabels, "zero normal");
    offs.emplace_back(-offsets_[i]);
  }
  geometry_ = from_halfspaces(normals_, offs);
  std::vector<bool> taken(geometry_.facets().size(), false);
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    Int g = gcd_of(normals_[i]);
    IntVector prim = primitive(normals_[i]);
    Rat off(-offsets_[i], g);
    off.canonicalize();
    std::size_t found = geometry_.facets().size();
    for (std::size_t f = 0; f < geometry_.facets().size(); ++f)
      if (geometry_.facets()[f].normal == prim && geometry_.facets()[f].offset == off) found = f;
    if (found == geometry_.facets().size() || taken[found])
      throw PolytopeError(PolytopeError::Kind::RedundantHalfspace, "halfspace " + std::to_string(i) + " is not a facet");
    taken[found] = true;
    facet_of_.push_back(found);
  }
  if (!geometry_.is_simple()) throw PolytopeError(PolytopeError::Kind::NotSimple, "polytope is not simple");
}

std::vector<Int> LabelledPolytope::labels() const {
  std::vector<Int> out;
  for (const auto& v : normals_) out.push_back(gcd_of(v));
  return out;
}

Face LabelledPolytope::face_of(const std::vector<std::size_t>& halfspaces) const {
  std::vector<std::size_t> verts;
  for (std::size_t v = 0; v < geometry_.vertices().size(); ++v) {
    bool tight = true;
    for (auto h : halfspaces) {
      const auto& f = geometry_.facets()[facet_of_[h]];
      if (!std::binary_search(f.vertices.begin(), f.vertices.end(), v)) tight = false;
    }
    if (tight) verts.push_back(v);
  }
  for (const auto& f : geometry_.all_faces())
    if (f.vertices == verts) return f;
  throw PolytopeError(PolytopeError::Kind::DegenerateInput, "halfspaces do not meet in a face");
}

}  // namespace torcon
