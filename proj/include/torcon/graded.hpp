#pragma once

#include <map>
#include <string>

#include "torcon/exactlat.hpp"

namespace torcon {

// Dimensions indexed by rational degree, restricted to a closed window. Degrees
// outside the window are dropped on insertion; missing degrees read as zero.
class GradedDimension {
 public:
  GradedDimension(Rat lo, Rat hi, Int step_den);

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  // degrees live in (2/step_den) Z
  const Int& step_den() const { return den_; }

  bool in_window(const Rat& degree) const { return degree >= lo_ && degree <= hi_; }
  void add(const Rat& degree, const Int& count);
  Int at(const Rat& degree) const;
  // every admissible degree of the window, ascending
  std::vector<Rat> degrees() const;
  bool operator==(const GradedDimension& o) const;
  // first degree where the two differ on the common window
  std::optional<Rat> first_difference(const GradedDimension& o) const;
  const std::map<Rat, Int>& entries() const { return entries_; }

 private:
  Rat lo_, hi_;
  Int den_;
  std::map<Rat, Int> entries_;
};

// [-2 + 2/m, 2n + 6]
GradedDimension default_window(const Int& m, std::size_t n);

}  // namespace torcon
