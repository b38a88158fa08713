#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torcon/ehrhart.hpp"
#include "torcon/exactlat.hpp"
#include "torcon/graded.hpp"
#include "torcon/polytope.hpp"

namespace torcon {

class ContactError : public std::runtime_error {
 public:
  enum class Kind { NotSimplicial, FacetNotUnimodular, NotInterior, GenericityFailure, IndexUnbounded };
  ContactError(Kind kind, const std::string& what, std::size_t facet = 0, Int iterate = 0)
      : std::runtime_error(what), kind_(kind), facet_(facet), iterate_(std::move(iterate)) {}
  Kind kind() const { return kind_; }
  std::size_t facet() const { return facet_; }
  const Int& iterate() const { return iterate_; }

 private:
  Kind kind_;
  std::size_t facet_;
  Int iterate_;
};

class ToricDiagram {
 public:
  const RationalPolytope& polytope() const { return polytope_; }
  std::size_t dimension() const { return polytope_.dimension(); }
  const Int& order() const { return order_; }
  // (m v_j, m) for each vertex v_j
  const std::vector<IntVector>& normals() const { return normals_; }
  const std::vector<Facet>& facets() const { return polytope_.facets(); }

  friend ToricDiagram validate_diagram(const RationalPolytope& p);

 private:
  RationalPolytope polytope_;
  Int order_;
  std::vector<IntVector> normals_;
};

ToricDiagram validate_diagram(const RationalPolytope& p);

// Smallest m >= 1 with an integral functional taking the value m on every normal.
struct C1Order {
  Int m;
  IntVector functional;
};
std::optional<C1Order> c1_order(const std::vector<IntVector>& normals);

// The point base + eps * direction of D, eps infinitesimal.
struct ReebVector {
  RatVector base;
  RatVector direction;

  // (m (base + eps direction), m) as jets
  std::vector<Jet> normalized(const Int& m) const;
};

// Default Reeb choice: barycenter of the vertices perturbed along (1, t, t^2, ...).
ReebVector default_reeb(const ToricDiagram& d, const Rat& t = Rat(1, 7));
// Requires every facet inequality to be positive on the jet point.
void check_reeb(const ToricDiagram& d, const ReebVector& reeb);

struct OrbitFamily {
  std::size_t facet = 0;
  std::vector<std::size_t> vertices;
  IntVector eta;  // (m h, k)
  Int k;
  std::vector<Jet> coefficients;  // b_j, one per facet vertex
  Jet b;                          // b > 0
};

OrbitFamily orbit_data(const ToricDiagram& d, std::size_t facet, const ReebVector& reeb);
// Same as orbit_data with a caller-chosen completion eta.
OrbitFamily orbit_data(const ToricDiagram& d, std::size_t facet, const ReebVector& reeb, const IntVector& eta);

Rat cz_index(const OrbitFamily& of, const Int& m, std::size_t n, const Int& iterate);
Rat orbit_degree(const OrbitFamily& of, const Int& m, std::size_t n, const Int& iterate);
// Iterates whose degree can still be <= max_degree.
Int iterate_bound(const OrbitFamily& of, const Rat& max_degree);

GradedDimension contact_betti_direct(const ToricDiagram& d, const ReebVector& reeb, const GradedDimension& window);
GradedDimension contact_betti_from_delta(const ToricDiagram& d, const GradedDimension& window);
GradedDimension contact_betti_from_delta(const DeltaVector& dv, const GradedDimension& window);

Rat mean_euler_characteristic(const ToricDiagram& d);
Rat minimal_discrepancy(const ToricDiagram& d);

}  // namespace torcon
