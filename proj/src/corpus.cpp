#include "torcon/corpus.hpp"

namespace torcon {

namespace {

RatVector pt(std::initializer_list<Rat> xs) { return RatVector(xs); }

Document diagram(std::string name, std::vector<RatVector> vs, std::optional<IntVector> reeb = std::nullopt) {
  Document d;
  d.name = std::move(name);
  d.kind = Document::Kind::Diagram;
  d.vertices = std::move(vs);
  d.reeb = std::move(reeb);
  return d;
}

Document labelled(std::string name, std::vector<IntVector> normals, std::vector<Int> offsets) {
  Document d;
  d.name = std::move(name);
  d.kind = Document::Kind::Labelled;
  d.normals = std::move(normals);
  d.offsets = std::move(offsets);
  return d;
}

std::vector<CorpusEntry> build() {
  const std::vector<IntVector> triangle{{1, 0}, {0, 1}, {-1, -1}};
  const std::vector<IntVector> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Rat third(1, 3), two_thirds(2, 3);
  std::vector<CorpusEntry> c;
  c.push_back({"l53", "lens space L(3;1,1,1), reflexive triangle",
               diagram("l53", {pt({1, 0}), pt({0, 1}), pt({-1, -1})}, IntVector{0, 0, 1})});
  c.push_back({"order3", "diagram of order 3, a square of side 1/3",
               diagram("order3", {pt({third, third}), pt({two_thirds, third}), pt({two_thirds, two_thirds}),
                                  pt({third, two_thirds})})});
  c.push_back({"simplex2", "standard triangle, the five-sphere", diagram("simplex2", {pt({0, 0}), pt({1, 0}), pt({0, 1})})});
  c.push_back({"flop", "quadrilateral with two crepant resolutions related by a flop",
               diagram("flop", {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({2, 2})}, IntVector{1, 1, 1})});
  c.push_back({"l53_alt", "another triangle for L(3;1,1,1), quotient with weighted base",
               diagram("l53_alt", {pt({0, 0}), pt({1, 0}), pt({2, 3})}, IntVector{1, 1, 2})});
  c.push_back({"l74", "lens space L(4;1,1,1,1), reflexive tetrahedron",
               diagram("l74", {pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({-1, -1, -1})}, IntVector{0, 0, 0, 1})});
  c.push_back({"cp2_r3", "projective plane, primitive class (r = 3)", labelled("cp2_r3", triangle, {0, 0, 1})});
  c.push_back({"cp2_r1", "projective plane, three times the primitive class (r = 1)", labelled("cp2_r1", triangle, {1, 1, 1})});
  c.push_back({"s2s2_r2", "product of spheres, unit square (r = 2)", labelled("s2s2_r2", square, {0, 0, 1, 1})});
  c.push_back({"s2s2_r1", "product of spheres, square of side 2 (r = 1)", labelled("s2s2_r1", square, {1, 1, 1, 1})});
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

std::optional<Document> corpus_document(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e.document;
  return std::nullopt;
}

}  // namespace torcon
