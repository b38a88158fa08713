#pragma once

#include <vector>

#include "torcon/exactlat.hpp"
#include "torcon/polytope.hpp"

namespace torcon {

// coefficients in increasing degree
using RatPolynomial = std::vector<Rat>;
using IntPolynomial = std::vector<Int>;

Rat evaluate(const RatPolynomial& p, const Rat& x);
IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b);

struct DeltaVector {
  Int m;
  std::size_t n = 0;
  std::vector<Int> delta;  // length m(n+1)
};

DeltaVector delta_vector(const RationalPolytope& p);

// Branch r (0 <= r < m) agrees with the point count at every t = r mod m.
struct QuasiPolynomial {
  Int m;
  std::vector<RatPolynomial> branches;

  Rat operator()(const Int& t) const;
};

QuasiPolynomial ehrhart_quasipolynomial(const DeltaVector& dv);
QuasiPolynomial ehrhart_quasipolynomial(const RationalPolytope& p);

// Coefficients c_j = delta_{mn-j} for j = -(m-1) .. mn, so that for t >= 0
//   L_int(t + m) = sum_{j = t mod m} c_j * binom((t - j)/m + n, n).
struct InteriorSeries {
  Int first_index;
  std::vector<Int> coeffs;  // coeffs[i] is c_{first_index + i}

  Int at(const Int& j) const;
};

InteriorSeries interior_series_coeffs(const DeltaVector& dv);
Int interior_count_from_series(const InteriorSeries& s, const DeltaVector& dv, const Int& t);

struct ReflexivityReport {
  bool reflexive = false;
  bool palindromic = false;  // delta_j = delta_{n-j}
  bool integral = false;
  std::optional<IntVector> interior_point;
};

ReflexivityReport is_reflexive(const RationalPolytope& p);

}  // namespace torcon
