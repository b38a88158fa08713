#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "torcon/exactlat.hpp"

namespace torcon {

class GeometryError : public std::runtime_error {
 public:
  enum class Kind { NotPointed, Degenerate };
  GeometryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Extreme rays (primitive) of the pointed cone {x : <row_i, x> >= 0}, computed by
// double description. Throws NotPointed when the rows do not span.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& rows);

}  // namespace torcon
