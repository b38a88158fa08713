#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torcon/contact.hpp"
#include "torcon/ehrhart.hpp"
#include "torcon/exactlat.hpp"
#include "torcon/graded.hpp"
#include "torcon/polytope.hpp"

namespace torcon {

class PrequantError : public std::runtime_error {
 public:
  enum class Kind { NotStrictlyConvex, NotPrimitive, NotInterior, NotGorenstein, NotGood, BaseNotSmooth, OrderNotOne };
  PrequantError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A face of the cone {y : <y, nu_j> >= 0}, listed by its tight normals and its rays.
struct ConeFace {
  std::vector<std::size_t> normals;
  std::vector<std::size_t> rays;
  std::size_t codimension = 0;
  std::vector<Int> invariants;  // Smith invariants of the tight normals
  bool good = false;            // exactly codimension normals, all invariants 1
};

struct GoodCone {
  std::vector<IntVector> normals;
  std::vector<IntVector> rays;
  std::vector<ConeFace> faces;  // apex excluded, sorted by codimension
  bool good = false;
  std::optional<std::size_t> failing;  // first bad face
};

// Throws NotPrimitive, NotStrictlyConvex.
GoodCone good_cone_certificate(const std::vector<IntVector>& normals);
bool is_good_cone(const std::vector<IntVector>& normals);

// (v_j, b_j) for each labelled halfspace
std::vector<IntVector> cone_normals(const LabelledPolytope& p);

struct GorensteinData {
  Int r;
  IntVector w;
};
// Integral (w, r), r >= 1, with <w, v_j> + r b_j = 1 for every halfspace.
std::optional<GorensteinData> gorenstein_r(const LabelledPolytope& p);

struct LabelledDiagram {
  IntMatrix basis;                 // unimodular, last row (w, r)
  std::vector<IntVector> images;   // basis * (v_j, b_j), last entry 1
  ToricDiagram diagram;
};
// Throws NotGorenstein when r does not exist or is not 1 after completion.
LabelledDiagram diagram_from_labelled(const LabelledPolytope& p);

struct SectorComponent {
  std::vector<std::size_t> face;  // diagram vertices j with nu_j tight
  RatVector coefficients;         // c_j in (0,1)
  Rat shift;                      // 2 sum c_j
  std::size_t dimension = 0;      // real dimension 2(n - |face|)
  IntPolynomial h;
};

struct TwistedSector {
  Rat T;
  std::vector<SectorComponent> components;
};

struct QuotientData {
  IntVector nu;
  Int r;
  Int order;                       // m of the diagram
  IntMatrix basis;                 // basis * nu = e_{n+1}
  std::vector<IntVector> normals;  // (m v_j, m) of the diagram
  LabelledPolytope base;
  std::vector<TwistedSector> sectors;  // ascending T, T = 1 last
  bool smooth = false;
};

// nu primitive with nu/r interior to the diagram. The basis is taken from a
// unimodular completion of nu.
QuotientData quotient_polytope(const ToricDiagram& d, const IntVector& nu);
// Same with a caller-chosen unimodular basis sending nu to e_{n+1}.
QuotientData quotient_polytope(const ToricDiagram& d, const IntVector& nu, const IntMatrix& basis);

// Quotient of the prequantization of p by its own circle action (Reeb vector e_{n+1}
// in the coordinates of the cone over p).
QuotientData quotient_of_labelled(const LabelledPolytope& p);

std::vector<TwistedSector> twisted_sectors(const ToricDiagram& d, const IntVector& nu, const LabelledPolytope& base);

// the number of elements of the isotropy group at each vertex of the base, |det(nu_J, nu)|
std::vector<Int> vertex_isotropy(const QuotientData& q);

GradedDimension orbifold_cohomology_of_base(const QuotientData& q);
// HC_d = sum_k sum_T sum_S h_i, d = shift + 2rT - 2 + 2i + 2rk. Requires m = 1.
GradedDimension hc_from_quotient(const QuotientData& q, const GradedDimension& window);
// Same sum restricted to one sector, for tables.
GradedDimension hc_sector_contribution(const QuotientData& q, const TwistedSector& s, const GradedDimension& window);
// HC_d = sum_k dim H_{d - 2rk - 2(r-1)}(B) for a smooth base.
GradedDimension hc_smooth_base(const QuotientData& q, const GradedDimension& window);
// Same formula read from a smooth labelled polytope.
GradedDimension hc_smooth_base(const LabelledPolytope& p, const GradedDimension& window);

// gcd of the maximal minors of the normal matrix
Int fundamental_group_order(const std::vector<IntVector>& normals);
Int fundamental_group_order(const ToricDiagram& d);
Int minimal_chern(const QuotientData& q);

}  // namespace torcon
