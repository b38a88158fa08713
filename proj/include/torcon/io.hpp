#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "torcon/exactlat.hpp"
#include "torcon/graded.hpp"
#include "torcon/polytope.hpp"

namespace torcon {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "p/q", "p", "-p/q"; lowest terms on output
Rat parse_rational(const std::string& s);
std::string format_rational(const Rat& q);
RatVector parse_rational_list(const std::string& csv);
IntVector parse_int_list(const std::string& csv);
// "dmin:dmax"
std::pair<Rat, Rat> parse_window(const std::string& s);

Rat rational_from_json(const json& j);
Int integer_from_json(const json& j);
json to_json(const Rat& q);
json to_json(const Int& x);
json to_json(const RatVector& v);
json to_json(const IntVector& v);

// Either a vertex description of a diagram or labelled halfspaces <v_i, x> + b_i >= 0.
struct Document {
  enum class Kind { Diagram, Labelled };
  std::string name;
  Kind kind = Kind::Diagram;
  std::vector<RatVector> vertices;
  std::vector<IntVector> normals;
  std::vector<Int> offsets;
  std::optional<IntVector> reeb;  // integral (w, r), used by the quotient pipeline
};

Document parse_document(const json& j);
Document load_document(const std::string& path);
json document_json(const Document& d);

// extra points and cells; cell indices refer to the document vertices followed by the points
struct TriangulationSpec {
  std::vector<RatVector> points;
  std::vector<std::vector<std::size_t>> cells;
};
TriangulationSpec parse_triangulation(const json& j);
TriangulationSpec load_triangulation(const std::string& path);

// [{"degree": "p/q", "dim": k}, ...]; dense lists every admissible degree of the window
json graded_json(const GradedDimension& g, bool dense = true);

}  // namespace torcon
