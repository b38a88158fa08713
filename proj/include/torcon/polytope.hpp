#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "torcon/exactlat.hpp"

namespace torcon {

class PolytopeError : public std::runtime_error {
 public:
  enum class Kind { DegenerateInput, OriginNotInterior, NotBounded, NotSimple, RedundantHalfspace, InvalidLabels };
  PolytopeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// <normal, x> >= offset, normal primitive and inward
struct Facet {
  IntVector normal;
  Rat offset;
  std::vector<std::size_t> vertices;
};

struct Face {
  int dimension = 0;
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> facets;  // facets containing the face
};

class RationalPolytope {
 public:
  RationalPolytope() = default;

  std::size_t dimension() const { return dim_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // every nonempty face, including the polytope itself, sorted by dimension
  const std::vector<Face>& all_faces() const { return faces_; }

  bool contains(const RatVector& x) const;
  bool in_interior(const RatVector& x) const;
  bool is_simplicial() const;
  bool is_simple() const;
  RationalPolytope scaled(const Rat& t) const;
  RationalPolytope translated(const RatVector& shift) const;

  friend RationalPolytope convex_hull(const std::vector<RatVector>& points);

 private:
  std::size_t dim_ = 0;
  std::vector<RatVector> vertices_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
};

RationalPolytope convex_hull(const std::vector<RatVector>& points);

// Bounded polytope {x : <a_i, x> >= c_i}. Throws NotBounded / DegenerateInput.
RationalPolytope from_halfspaces(const std::vector<IntVector>& normals, const std::vector<Rat>& offsets);

// Smallest m >= 1 with m * vertices integral.
Int order(const RationalPolytope& p);

enum class Region { Closed, Interior };

// Number of lattice points in t*P (or its interior). count_points scans rows with
// exact bounds on the last coordinate; count_points_box checks every point of the
// bounding box and serves as a reference.
Int count_points(const RationalPolytope& p, const Int& t, Region region = Region::Closed);
Int count_points_box(const RationalPolytope& p, const Int& t, Region region = Region::Closed);
std::vector<IntVector> lattice_points(const RationalPolytope& p, Region region = Region::Closed);

// Pulling triangulation; each simplex is a list of vertex indices.
std::vector<std::vector<std::size_t>> pulling_triangulation(const RationalPolytope& p, std::size_t first_vertex = 0);
// n! times the Euclidean volume
Rat normalized_volume(const RationalPolytope& p, std::size_t first_vertex = 0);
Rat simplex_normalized_volume(const std::vector<RatVector>& points);

// Dual with respect to <x, y> >= -1; requires the origin in the interior.
RationalPolytope dual_polytope(const RationalPolytope& p);

std::vector<Face> faces(const RationalPolytope& p, int dimension);
int affine_dimension(const std::vector<RatVector>& points);

// Simple polytope given by labelled halfspaces <normals_i, x> + offsets_i >= 0.
// The label of a facet is the gcd of its (not necessarily primitive) normal.
class LabelledPolytope {
 public:
  LabelledPolytope(std::vector<IntVector> normals, std::vector<Int> offsets);

  std::size_t dimension() const { return geometry_.dimension(); }
  const std::vector<IntVector>& normals() const { return normals_; }
  const std::vector<Int>& offsets() const { return offsets_; }
  std::vector<Int> labels() const;
  const RationalPolytope& geometry() const { return geometry_; }
  // facet of geometry() for each halfspace
  const std::vector<std::size_t>& facet_of_halfspace() const { return facet_of_; }
  // vertices of the face cut out by the given halfspaces
  Face face_of(const std::vector<std::size_t>& halfspaces) const;

 private:
  std::vector<IntVector> normals_;
  std::vector<Int> offsets_;
  RationalPolytope geometry_;
  std::vector<std::size_t> facet_of_;
};

}  // namespace torcon
