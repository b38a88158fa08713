#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "torcon/contact.hpp"
#include "torcon/ehrhart.hpp"
#include "torcon/graded.hpp"

namespace torcon {

class ResolutionError : public std::runtime_error {
 public:
  enum class Kind {
    PointNotInterior,
    PointNotRational,
    NotRational,
    NotCovering,
    ImproperIntersection,
    BadCell,
    NotStrictlyConvex,
    MismatchAt,
  };
  ResolutionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Triangulation {
  Int order;                                // points lie in (1/order) Z^n
  std::vector<RatVector> points;            // diagram vertices first
  std::vector<std::vector<std::size_t>> cells;  // sorted point indices
};

// cells conv(p, facet) for every facet of D
Triangulation star_triangulation(const ToricDiagram& d, const RatVector& p);
// no added points: D itself when D is a simplex, otherwise a pulling triangulation of its vertices
Triangulation trivial_triangulation(const ToricDiagram& d);
// cells index into vertices of D followed by extra_points
Triangulation make_triangulation(const ToricDiagram& d, const std::vector<RatVector>& extra_points,
                                 std::vector<std::vector<std::size_t>> cells);

struct TriangulationReport {
  bool unimodular = false;
  Rat volume;  // normalized
};
TriangulationReport validate_triangulation(const ToricDiagram& d, const Triangulation& t);

struct Fan {
  std::size_t ambient = 0;  // n + 1
  Int order;
  std::vector<IntVector> rays;               // (m p, m) per point
  std::vector<std::vector<std::size_t>> cones;  // all cones, zero cone first, sorted by size then indices
  std::vector<std::size_t> maximal;          // indices into cones
  bool crepant = false;                      // every ray generator primitive on height m

  std::size_t cone_index(const std::vector<std::size_t>& rays) const;
};

Fan fan_over(const Triangulation& t);

struct SupportFunction {
  std::vector<Rat> ray_values;
  std::vector<RatVector> cartier;  // one per maximal cone, same order as Fan::maximal
};

// phi(x) = sum over codimension-one cones tau of |<x, m_tau>|
SupportFunction support_function(const Fan& f);
SupportFunction support_function_from_values(const Fan& f, const std::vector<Rat>& ray_values);
bool is_strictly_convex(const Fan& f, const SupportFunction& phi);

// The polyhedron {x : <x, ray> >= -phi(ray)}. For convex phi its vertices are -m_sigma.
struct MomentPolyhedron {
  std::vector<IntVector> normals;
  std::vector<Rat> offsets;
  std::vector<RatVector> vertices;
  std::vector<IntVector> recession_rays;
};
MomentPolyhedron moment_polyhedron(const Fan& f, const SupportFunction& phi);

struct BoxElement {
  std::size_t cone = 0;
  IntVector point;
  RatVector coefficients;
  Rat psi;
};

std::vector<BoxElement> box_elements(const Fan& f, std::size_t cone);
// all points sum c_j v_j with c_j in [0,1), any of them zero allowed
std::vector<BoxElement> half_open_parallelepiped(const Fan& f, std::size_t cone);

IntPolynomial h_polynomial(const Fan& f, std::size_t cone);
IntPolynomial face_h_polynomial(const RationalPolytope& p, const Face& face);

// keys: exponent of q (in (1/m) Z); value: coefficient
using RatSeries = std::map<Rat, Int>;

RatSeries orbifold_poincare_series(const Fan& f);
// dims of H^{2j}_orb at degrees 2j
GradedDimension orbifold_poincare(const Fan& f);

struct SectorContribution {
  std::size_t cone = 0;
  RatVector coefficients;  // empty for the untwisted part
  Rat psi;
  RatSeries series;        // h_tau(q) q^psi
  GradedDimension cb;
};

struct StapledonReport {
  std::vector<Int> delta;
  RatSeries series;
};

StapledonReport stapledon_check(const ToricDiagram& d, const Triangulation& t);

// cb_{2j} = sum_{k >= 0} dim H^{2n-2j+2k}_orb
GradedDimension hc_from_resolution(const ToricDiagram& d, const Triangulation& t, const GradedDimension& window);
// untwisted part first, then one row per box element
std::vector<SectorContribution> resolution_contributions(const ToricDiagram& d, const Triangulation& t,
                                                         const GradedDimension& window);

}  // namespace torcon
