#include "torcon/cli.hpp"

#include <sstream>

#include <CLI11.hpp>

#include "torcon/cone.hpp"
#include "torcon/contact.hpp"
#include "torcon/corpus.hpp"
#include "torcon/ehrhart.hpp"
#include "torcon/io.hpp"
#include "torcon/prequant.hpp"
#include "torcon/resolution.hpp"

namespace torcon {

namespace {

// thrown by the commands themselves when pipelines disagree
struct Mismatch : std::runtime_error {
  json report;
  Mismatch(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

Document load_input(const std::string& input) {
  const std::string prefix = "corpus:";
  if (input.rfind(prefix, 0) == 0) {
    auto doc = corpus_document(input.substr(prefix.size()));
    if (!doc) throw ParseError("no corpus document named " + input.substr(prefix.size()));
    return *doc;
  }
  return load_document(input);
}

LabelledPolytope labelled_of(const Document& doc) { return LabelledPolytope(doc.normals, doc.offsets); }

ToricDiagram diagram_of(const Document& doc) {
  if (doc.kind == Document::Kind::Labelled) return diagram_from_labelled(labelled_of(doc)).diagram;
  return validate_diagram(convex_hull(doc.vertices));
}

GradedDimension window_for(const JobSpec& spec, const Int& m, std::size_t n) {
  if (!spec.window) return default_window(m, n);
  auto [lo, hi] = parse_window(*spec.window);
  return GradedDimension(lo, hi, m);
}

ReebVector reeb_for(const JobSpec& spec, const ToricDiagram& d) {
  Rat t(1, 7);
  if (spec.perturb) t = parse_rational(*spec.perturb);
  ReebVector r = default_reeb(d, t);
  if (spec.reeb) {
    r.base = parse_rational_list(*spec.reeb);
    if (r.base.size() != d.dimension()) throw ParseError("--reeb needs " + std::to_string(d.dimension()) + " coordinates");
  }
  return r;
}

json jet_json(const Jet& j) { return {{"value", to_json(j.value)}, {"slope", to_json(j.slope)}}; }

json vertices_json(const std::vector<RatVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json int_rows_json(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json series_json(const RatSeries& s) {
  json a = json::array();
  for (const auto& [e, c] : s) a.push_back({{"exponent", to_json(e)}, {"coefficient", to_json(c)}});
  return a;
}

json diff_json(const GradedDimension& a, const GradedDimension& b) {
  auto d = a.first_difference(b);
  if (!d) return nullptr;
  return {{"degree", to_json(*d)}, {"left", to_json(a.at(*d))}, {"right", to_json(b.at(*d))}};
}

Triangulation triangulation_for(const JobSpec& spec, const Document& doc, const ToricDiagram& d) {
  if (spec.star) return star_triangulation(d, parse_rational_list(*spec.star));
  if (spec.triangulation) {
    auto ts = load_triangulation(*spec.triangulation);
    // indices refer to the document vertices followed by the extra points
    std::vector<RatVector> given = doc.kind == Document::Kind::Diagram ? doc.vertices : std::vector<RatVector>{};
    given.insert(given.end(), ts.points.begin(), ts.points.end());
    const auto& hull = d.polytope().vertices();
    std::vector<RatVector> extra;
    std::vector<std::size_t> where;
    for (const auto& p : given) {
      auto it = std::find(hull.begin(), hull.end(), p);
      if (it != hull.end()) {
        where.push_back(static_cast<std::size_t>(it - hull.begin()));
        continue;
      }
      auto jt = std::find(extra.begin(), extra.end(), p);
      if (jt == extra.end()) {
        extra.push_back(p);
        jt = extra.end() - 1;
      }
      where.push_back(hull.size() + static_cast<std::size_t>(jt - extra.begin()));
    }
    auto cells = ts.cells;
    for (auto& c : cells)
      for (auto& i : c) {
        if (i >= where.size()) throw ParseError("cell index " + std::to_string(i) + " out of range");
        i = where[i];
      }
    return make_triangulation(d, extra, cells);
  }
  return trivial_triangulation(d);
}

json cmd_validate(const JobSpec&, const Document& doc) {
  json out;
  if (doc.kind == Document::Kind::Labelled) {
    LabelledPolytope p = labelled_of(doc);
    out["kind"] = "labelled";
    out["dimension"] = p.dimension();
    out["labels"] = to_json(IntVector(p.labels()));
    out["vertices"] = vertices_json(p.geometry().vertices());
    bool good = false;
    try {
      good = is_good_cone(cone_normals(p));
    } catch (const PrequantError&) {
    }
    out["good"] = good;
    auto g = gorenstein_r(p);
    out["gorenstein"] = g ? json{{"r", to_json(g->r)}, {"w", to_json(g->w)}} : json(nullptr);
    if (g && good) out["diagram"] = vertices_json(diagram_from_labelled(p).diagram.polytope().vertices());
    return out;
  }
  ToricDiagram d = diagram_of(doc);
  const auto& p = d.polytope();
  out["kind"] = "diagram";
  out["dimension"] = d.dimension();
  out["order"] = to_json(d.order());
  out["vertices"] = vertices_json(p.vertices());
  json facets = json::array();
  for (const auto& f : p.facets())
    facets.push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}, {"vertices", f.vertices}});
  out["facets"] = facets;
  out["normals"] = int_rows_json(d.normals());
  auto c1 = c1_order(d.normals());
  out["c1_order"] = c1 ? to_json(c1->m) : json(nullptr);
  out["fundamental_group_order"] = to_json(fundamental_group_order(d));
  out["reflexive"] = is_reflexive(p).reflexive;
  out["mean_euler_characteristic"] = to_json(mean_euler_characteristic(d));
  out["minimal_discrepancy"] = to_json(minimal_discrepancy(d));
  return out;
}

json cmd_ehrhart(const JobSpec& spec, const Document& doc) {
  ToricDiagram d = diagram_of(doc);
  DeltaVector dv = delta_vector(d.polytope());
  json out{{"m", to_json(dv.m)}, {"n", dv.n}, {"delta", to_json(IntVector(dv.delta))}};
  if (spec.command == "ehrhart") {
    json br = json::array();
    for (const auto& b : ehrhart_quasipolynomial(dv).branches) br.push_back(to_json(b));
    out["branches"] = br;
  }
  return out;
}

json cmd_cb(const JobSpec& spec, const Document& doc) {
  ToricDiagram d = diagram_of(doc);
  GradedDimension w = window_for(spec, d.order(), d.dimension());
  std::string pipeline = spec.pipeline.empty() ? "both" : spec.pipeline;
  if (pipeline != "delta" && pipeline != "direct" && pipeline != "both") throw ParseError("unknown pipeline " + pipeline);
  json out{{"m", to_json(d.order())}, {"n", d.dimension()}, {"window", {to_json(w.lo()), to_json(w.hi())}}};
  if (pipeline == "delta") {
    out["cb"] = graded_json(contact_betti_from_delta(d, w));
    return out;
  }
  ReebVector r = reeb_for(spec, d);
  out["reeb"] = {{"base", to_json(r.base)}, {"direction", to_json(r.direction)}};
  GradedDimension direct = contact_betti_direct(d, r, w);
  out["cb"] = graded_json(direct);
  if (pipeline == "both") {
    GradedDimension delta = contact_betti_from_delta(d, w);
    out["agreement"] = delta == direct;
    if (!(delta == direct)) {
      out["first_difference"] = diff_json(delta, direct);
      throw Mismatch("delta and direct pipelines disagree", out);
    }
  }
  return out;
}

json cmd_orbits(const JobSpec& spec, const Document& doc) {
  ToricDiagram d = diagram_of(doc);
  GradedDimension w = window_for(spec, d.order(), d.dimension());
  ReebVector r = reeb_for(spec, d);
  check_reeb(d, r);
  json fams = json::array();
  for (std::size_t f = 0; f < d.facets().size(); ++f) {
    OrbitFamily of = orbit_data(d, f, r);
    json coeffs = json::array();
    for (const auto& c : of.coefficients) coeffs.push_back(jet_json(c));
    json orbits = json::array();
    if (of.b.value != 0) {
      Int bound = iterate_bound(of, w.hi());
      for (Int N = 1; N <= bound; ++N) {
        Rat deg = orbit_degree(of, d.order(), d.dimension(), N);
        if (!w.in_window(deg)) continue;
        orbits.push_back({{"iterate", to_json(N)},
                          {"cz", to_json(cz_index(of, d.order(), d.dimension(), N))},
                          {"degree", to_json(deg)}});
      }
    }
    fams.push_back({{"facet", f},
                    {"vertices", of.vertices},
                    {"eta", to_json(of.eta)},
                    {"k", to_json(of.k)},
                    {"b", jet_json(of.b)},
                    {"coefficients", coeffs},
                    {"orbits", orbits}});
  }
  return {{"m", to_json(d.order())},
          {"window", {to_json(w.lo()), to_json(w.hi())}},
          {"reeb", {{"base", to_json(r.base)}, {"direction", to_json(r.direction)}}},
          {"families", fams}};
}

json cmd_resolve(const JobSpec& spec, const Document& doc) {
  ToricDiagram d = diagram_of(doc);
  Triangulation t = triangulation_for(spec, doc, d);
  TriangulationReport rep = validate_triangulation(d, t);
  Fan f = fan_over(t);
  json out{{"points", vertices_json(t.points)},
           {"cells", t.cells},
           {"unimodular", rep.unimodular},
           {"volume", to_json(rep.volume)},
           {"crepant", f.crepant},
           {"rays", int_rows_json(f.rays)}};
  if (spec.command == "orbifold") {
    json o{{"H_orb", graded_json(orbifold_poincare(f), false)},
           {"crepant", f.crepant},
           {"unimodular", rep.unimodular},
           {"series", series_json(orbifold_poincare_series(f))}};
    try {
      stapledon_check(d, t);
      o["stapledon"] = true;
    } catch (const ResolutionError& e) {
      if (e.kind() != ResolutionError::Kind::MismatchAt) throw;
      o["stapledon"] = false;
      o["detail"] = e.what();
      throw Mismatch(e.what(), o);
    }
    return o;
  }
  SupportFunction phi = support_function(f);
  bool convex = is_strictly_convex(f, phi);
  out["support"] = {{"ray_values", to_json(phi.ray_values)}, {"strictly_convex", convex}};
  if (convex) {
    MomentPolyhedron mp = moment_polyhedron(f, phi);
    out["moment"] = {{"vertices", vertices_json(mp.vertices)}, {"recession_rays", int_rows_json(mp.recession_rays)}};
  }
  json box = json::array();
  for (std::size_t ci = 0; ci < f.cones.size(); ++ci)
    for (const auto& e : box_elements(f, ci))
      box.push_back({{"cone", f.cones[ci]}, {"point", to_json(e.point)}, {"coefficients", to_json(e.coefficients)}, {"psi", to_json(e.psi)}});
  out["box"] = box;
  return out;
}

QuotientData quotient_for(const JobSpec& spec, const Document& doc) {
  if (spec.reeb) return quotient_polytope(diagram_of(doc), parse_int_list(*spec.reeb));
  if (doc.kind == Document::Kind::Labelled) return quotient_of_labelled(labelled_of(doc));
  if (doc.reeb) return quotient_polytope(diagram_of(doc), *doc.reeb);
  throw ParseError("quotient needs --reeb w1,...,wn,r");
}

json quotient_json(const QuotientData& q, const GradedDimension& w) {
  json base{{"normals", int_rows_json(q.base.normals())},
            {"offsets", to_json(IntVector(q.base.offsets()))},
            {"labels", to_json(IntVector(q.base.labels()))},
            {"vertices", vertices_json(q.base.geometry().vertices())}};
  json sectors = json::array();
  for (const auto& s : q.sectors) {
    json comps = json::array();
    for (const auto& c : s.components)
      comps.push_back({{"face", c.face}, {"cT", to_json(c.shift)}, {"h", to_json(IntVector(c.h))}, {"coefficients", to_json(c.coefficients)}});
    sectors.push_back({{"T", to_json(s.T)}, {"components", comps}});
  }
  json out{{"r", to_json(q.r)}, {"nu", to_json(q.nu)}, {"base", base}, {"sectors", sectors}, {"smooth", q.smooth},
           {"H_orb", graded_json(orbifold_cohomology_of_base(q), false)}};
  if (q.order == 1) out["HC"] = graded_json(hc_from_quotient(q, w));
  if (q.smooth) out["minimal_chern"] = to_json(minimal_chern(q));
  return out;
}

json cmd_quotient(const JobSpec& spec, const Document& doc) {
  QuotientData q = quotient_for(spec, doc);
  return quotient_json(q, window_for(spec, q.order, q.base.dimension()));
}

json cmd_hc(const JobSpec& spec, const Document& doc) {
  ToricDiagram d = diagram_of(doc);
  GradedDimension w = window_for(spec, d.order(), d.dimension());
  std::string pipeline = spec.pipeline.empty() ? "delta" : spec.pipeline;
  GradedDimension hc(w.lo(), w.hi(), w.step_den());
  if (pipeline == "delta") {
    hc = contact_betti_from_delta(d, w);
  } else if (pipeline == "direct") {
    hc = contact_betti_direct(d, reeb_for(spec, d), w);
  } else if (pipeline == "resolution") {
    hc = hc_from_resolution(d, triangulation_for(spec, doc, d), w);
  } else if (pipeline == "quotient") {
    hc = hc_from_quotient(quotient_for(spec, doc), w);
  } else if (pipeline == "smooth") {
    hc = hc_smooth_base(quotient_for(spec, doc), w);
  } else {
    throw ParseError("unknown pipeline " + pipeline);
  }
  return {{"m", to_json(d.order())}, {"pipeline", pipeline}, {"HC", graded_json(hc)}};
}

// a Reeb vector (w, r) for the quotient check: the document's, or an interior lattice point
std::optional<IntVector> quotient_reeb(const Document& doc, const ToricDiagram& d) {
  if (doc.kind == Document::Kind::Diagram && doc.reeb) return doc.reeb;
  auto pts = lattice_points(d.polytope(), Region::Interior);
  if (pts.empty()) return std::nullopt;
  IntVector nu = pts.front();
  nu.push_back(1);
  return nu;
}

json cmd_crosscheck(const JobSpec& spec, const Document& doc) {
  ToricDiagram d = diagram_of(doc);
  const Int& m = d.order();
  GradedDimension w = window_for(spec, m, d.dimension());
  GradedDimension ref = contact_betti_from_delta(d, w);
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, json detail = nullptr) {
    all = all && ok;
    json c{{"name", name}, {"status", ok ? "agree" : "disagree"}};
    if (!detail.is_null()) c["detail"] = detail;
    checks.push_back(c);
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    checks.push_back({{"name", name}, {"status", "skipped"}, {"detail", why}});
  };

  {
    // point counts against the quasi-polynomial, and the interior series
    DeltaVector dv = delta_vector(d.polytope());
    QuasiPolynomial qp = ehrhart_quasipolynomial(dv);
    InteriorSeries is = interior_series_coeffs(dv);
    bool ok = true;
    json detail = nullptr;
    for (Int t = 0; t <= 3 * m && ok; ++t) {
      Int closed = count_points(d.polytope(), t);
      if (qp(t) != Rat(closed)) {
        ok = false;
        detail = {{"t", to_json(t)}, {"count", to_json(closed)}};
      }
      if (t >= m && interior_count_from_series(is, dv, t) != count_points(d.polytope(), t, Region::Interior)) {
        ok = false;
        detail = {{"t", to_json(t)}, {"interior", true}};
      }
    }
    record("ehrhart", ok, detail);
  }
  {
    GradedDimension direct = contact_betti_direct(d, reeb_for(spec, d), w);
    record("direct", direct == ref, diff_json(ref, direct));
  }
  {
    Triangulation t = triangulation_for(spec, doc, d);
    bool stap = true;
    json detail = nullptr;
    try {
      stapledon_check(d, t);
    } catch (const ResolutionError& e) {
      if (e.kind() != ResolutionError::Kind::MismatchAt) throw;
      stap = false;
      detail = e.what();
    }
    record("stapledon", stap, detail);
    GradedDimension res = hc_from_resolution(d, t, w);
    record("resolution", res == ref, diff_json(ref, res));
  }
  if (m != 1) {
    skip("quotient", "diagram order is not 1");
  } else {
    std::optional<QuotientData> q;
    if (spec.reeb) q = quotient_polytope(d, parse_int_list(*spec.reeb));
    else if (doc.kind == Document::Kind::Labelled) q = quotient_of_labelled(labelled_of(doc));
    else if (auto nu = quotient_reeb(doc, d)) q = quotient_polytope(d, *nu);
    if (!q) {
      skip("quotient", "no integral interior Reeb vector");
    } else {
      GradedDimension hq = hc_from_quotient(*q, w);
      record("quotient", hq == ref, diff_json(ref, hq));
      if (q->smooth) {
        GradedDimension hs = hc_smooth_base(*q, w);
        record("smooth_base", hs == ref, diff_json(ref, hs));
      } else {
        skip("smooth_base", "base has orbifold points");
      }
    }
  }
  json out{{"m", to_json(m)}, {"checks", checks}, {"agreement", all}};
  if (!all) throw Mismatch("pipelines disagree", out);
  return out;
}

std::string render_scalar(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool graded_list(const json& j) {
  return j.is_array() && !j.empty() && j.front().is_object() && j.front().size() == 2 && j.front().contains("degree") &&
         j.front().contains("dim");
}

void render(const json& j, std::ostream& os, const std::string& indent) {
  for (const auto& [key, val] : j.items()) {
    if (graded_list(val)) {
      std::ostringstream deg, dim;
      for (const auto& e : val) {
        std::string a = render_scalar(e["degree"]), b = render_scalar(e["dim"]);
        std::size_t width = std::max(a.size(), b.size()) + 1;
        deg << std::string(width - a.size(), ' ') << a;
        dim << std::string(width - b.size(), ' ') << b;
      }
      os << indent << key << "\n" << indent << "  degree" << deg.str() << "\n" << indent << "  dim   " << dim.str() << "\n";
    } else if (val.is_object()) {
      os << indent << key << "\n";
      render(val, os, indent + "  ");
    } else if (val.is_array() && std::any_of(val.begin(), val.end(), [](const json& e) { return e.is_object(); })) {
      os << indent << key << "\n";
      for (const auto& e : val) {
        if (e.is_object()) {
          os << indent << "  -\n";
          render(e, os, indent + "    ");
        } else {
          os << indent << "  " << render_scalar(e) << "\n";
        }
      }
    } else if (val.is_array()) {
      os << indent << key << ":";
      for (const auto& e : val) os << " " << (e.is_array() ? e.dump() : render_scalar(e));
      os << "\n";
    } else {
      os << indent << key << ": " << render_scalar(val) << "\n";
    }
  }
}

std::string format_output(const JobSpec& spec, const json& j) {
  if (spec.format == "table") {
    std::ostringstream os;
    render(j, os, "");
    return os.str();
  }
  return j.dump(2) + "\n";
}

json dispatch(const JobSpec& spec, const Document& doc) {
  const std::string& c = spec.command;
  if (c == "validate") return cmd_validate(spec, doc);
  if (c == "ehrhart" || c == "delta") return cmd_ehrhart(spec, doc);
  if (c == "cb") return cmd_cb(spec, doc);
  if (c == "orbits") return cmd_orbits(spec, doc);
  if (c == "resolve" || c == "orbifold") return cmd_resolve(spec, doc);
  if (c == "quotient") return cmd_quotient(spec, doc);
  if (c == "hc") return cmd_hc(spec, doc);
  if (c == "crosscheck") return cmd_crosscheck(spec, doc);
  throw ParseError("unknown command " + c);
}

std::string kind_name(ContactError::Kind k) {
  switch (k) {
    case ContactError::Kind::NotSimplicial: return "NotSimplicial";
    case ContactError::Kind::FacetNotUnimodular: return "FacetNotUnimodular";
    case ContactError::Kind::NotInterior: return "NotInterior";
    case ContactError::Kind::GenericityFailure: return "GenericityFailure";
    case ContactError::Kind::IndexUnbounded: return "IndexUnbounded";
  }
  return "ContactError";
}

}  // namespace

RunResult run(const JobSpec& spec) {
  RunResult res;
  try {
    if (spec.format != "json" && spec.format != "table") throw ParseError("unknown format " + spec.format);
    Document doc = load_input(spec.input);
    res.output = format_output(spec, dispatch(spec, doc));
  } catch (const Mismatch& e) {
    res.exit_code = kExitMismatch;
    res.output = format_output(spec, e.report);
    res.error = std::string("mismatch: ") + e.what();
  } catch (const ParseError& e) {
    res.exit_code = kExitParse;
    res.error = std::string("parse error: ") + e.what();
  } catch (const ContactError& e) {
    bool generic = e.kind() == ContactError::Kind::GenericityFailure || e.kind() == ContactError::Kind::IndexUnbounded;
    res.exit_code = generic ? kExitGenericity : kExitValidation;
    res.error = kind_name(e.kind()) + ": " + e.what();
    if (generic) res.error += " (facet " + std::to_string(e.facet()) + ", iterate " + e.iterate().get_str() + ")";
  } catch (const ResolutionError& e) {
    res.exit_code = e.kind() == ResolutionError::Kind::MismatchAt ? kExitMismatch : kExitValidation;
    res.error = std::string("resolution: ") + e.what();
  } catch (const std::runtime_error& e) {
    // polytope, lattice, cone and prequantization errors
    res.exit_code = kExitValidation;
    res.error = std::string("validation error: ") + e.what();
  }
  if (!res.error.empty() && res.error.back() != '\n') res.error += "\n";
  return res;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact contact invariants of toric diagrams"};
  app.require_subcommand(1);
  JobSpec spec;
  std::string window, reeb, perturb, triangulation, star;

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"validate", "check a diagram or labelled polytope"},
      {"ehrhart", "delta-vector and quasi-polynomial branches"},
      {"delta", "delta-vector"},
      {"cb", "contact Betti numbers"},
      {"orbits", "closed Reeb orbit families and their degrees"},
      {"resolve", "fan, support function and box elements of a triangulation"},
      {"orbifold", "orbifold cohomology of a triangulation"},
      {"quotient", "base orbifold of a circle action and its twisted sectors"},
      {"hc", "contact homology by one pipeline"},
      {"crosscheck", "run every applicable pipeline and compare"},
  };
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", spec.input, "document path or corpus:<name>")->required();
    sub->add_option("--format", spec.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--window", window, "degree window dmin:dmax");
    sub->add_option("--reeb", reeb, "Reeb point p/q,... (or integral w,...,r for quotient)");
    sub->add_option("--perturb", perturb, "perturbation parameter t");
    sub->add_option("--pipeline", spec.pipeline, "pipeline name");
    sub->add_option("--triangulation", triangulation, "triangulation document");
    sub->add_option("--star", star, "star triangulation at p/q,...");
    sub->add_flag("--trivial", spec.trivial, "triangulation without added points");
    sub->callback([&spec, name = std::string(c.name)] { spec.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  if (!window.empty()) spec.window = window;
  if (!reeb.empty()) spec.reeb = reeb;
  if (!perturb.empty()) spec.perturb = perturb;
  if (!triangulation.empty()) spec.triangulation = triangulation;
  if (!star.empty()) spec.star = star;

  RunResult res = run(spec);
  out << res.output;
  err << res.error;
  return res.exit_code;
}

}  // namespace torcon
