#include "torcon/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace torcon {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Rat parse_rational(const std::string& raw) {
  static const std::regex pattern(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(raw, m, pattern)) throw ParseError("not a rational: \"" + raw + "\"");
  Int num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
  Int den = m[2].matched ? Int(m[2].str()) : Int(1);
  if (den == 0) throw ParseError("zero denominator in \"" + raw + "\"");
  return ratio(num, den);
}

std::string format_rational(const Rat& q) { return to_string(q); }

RatVector parse_rational_list(const std::string& csv) {
  RatVector out;
  for (const auto& part : split(csv, ',')) out.push_back(parse_rational(part));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

IntVector parse_int_list(const std::string& csv) {
  IntVector out;
  for (const auto& q : parse_rational_list(csv)) {
    if (q.get_den() != 1) throw ParseError("expected integers in \"" + csv + "\"");
    out.push_back(q.get_num());
  }
  return out;
}

std::pair<Rat, Rat> parse_window(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2) throw ParseError("window must read dmin:dmax");
  Rat lo = parse_rational(trim(parts[0])), hi = parse_rational(trim(parts[1]));
  if (hi < lo) throw ParseError("empty window " + s);
  return {lo, hi};
}

Rat rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

Int integer_from_json(const json& j) {
  Rat q = rational_from_json(j);
  if (q.get_den() != 1) throw ParseError("expected an integer, got " + j.dump());
  return q.get_num();
}

json to_json(const Rat& q) { return format_rational(q); }

json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json to_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Document parse_document(const json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  Document d;
  if (j.contains("name")) d.name = j.at("name").get<std::string>();
  try {
    if (j.contains("vertices")) {
      d.kind = Document::Kind::Diagram;
      for (const auto& v : j.at("vertices")) {
        RatVector p;
        for (const auto& x : v) p.push_back(rational_from_json(x));
        d.vertices.push_back(std::move(p));
      }
      if (d.vertices.empty()) throw ParseError("no vertices");
      std::size_t n = j.contains("dimension") ? j.at("dimension").get<std::size_t>() : d.vertices.front().size();
      for (const auto& v : d.vertices)
        if (v.size() != n) throw ParseError("vertex of the wrong dimension");
    } else if (j.contains("normals")) {
      d.kind = Document::Kind::Labelled;
      for (const auto& v : j.at("normals")) {
        IntVector a;
        for (const auto& x : v) a.push_back(integer_from_json(x));
        d.normals.push_back(std::move(a));
      }
      for (const auto& x : field(j, "offsets")) d.offsets.push_back(integer_from_json(x));
      if (d.normals.empty() || d.normals.size() != d.offsets.size())
        throw ParseError("normals and offsets must be nonempty and of equal length");
      for (const auto& v : d.normals)
        if (v.size() != d.normals.front().size()) throw ParseError("normals of different lengths");
    } else {
      throw ParseError("document has neither \"vertices\" nor \"normals\"");
    }
    if (j.contains("reeb")) {
      IntVector r;
      for (const auto& x : j.at("reeb")) r.push_back(integer_from_json(x));
      d.reeb = std::move(r);
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return d;
}

Document load_document(const std::string& path) { return parse_document(read_json(path)); }

json document_json(const Document& d) {
  json j;
  if (!d.name.empty()) j["name"] = d.name;
  if (d.kind == Document::Kind::Diagram) {
    j["dimension"] = d.vertices.front().size();
    json vs = json::array();
    for (const auto& v : d.vertices) vs.push_back(to_json(v));
    j["vertices"] = vs;
  } else {
    json ns = json::array();
    for (const auto& v : d.normals) ns.push_back(to_json(v));
    j["normals"] = ns;
    j["offsets"] = to_json(IntVector(d.offsets));
  }
  if (d.reeb) j["reeb"] = to_json(*d.reeb);
  return j;
}

TriangulationSpec parse_triangulation(const json& j) {
  TriangulationSpec t;
  try {
    if (j.contains("points"))
      for (const auto& v : j.at("points")) {
        RatVector p;
        for (const auto& x : v) p.push_back(rational_from_json(x));
        t.points.push_back(std::move(p));
      }
    for (const auto& c : field(j, "cells")) {
      std::vector<std::size_t> cell;
      for (const auto& i : c) cell.push_back(i.get<std::size_t>());
      t.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return t;
}

TriangulationSpec load_triangulation(const std::string& path) { return parse_triangulation(read_json(path)); }

json graded_json(const GradedDimension& g, bool dense) {
  json a = json::array();
  if (dense) {
    for (const auto& d : g.degrees()) a.push_back({{"degree", format_rational(d)}, {"dim", to_json(g.at(d))}});
  } else {
    for (const auto& [d, c] : g.entries()) a.push_back({{"degree", format_rational(d)}, {"dim", to_json(c)}});
  }
  return a;
}

}  // namespace torcon
