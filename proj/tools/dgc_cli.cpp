#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dgc/cech.hpp"
#include "dgc/cech_io.hpp"
#include "dgc/cohomology.hpp"
#include "dgc/extensions.hpp"
#include "dgc/json_io.hpp"
#include "dgc/nerve.hpp"

using namespace dgc;

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string bundle;
  std::string format = "text";
  std::size_t max_cells = kDefaultMaxCells;
  int degree = -1;
  bool dump_matrices = false;
  bool dump_cells = false;
  bool filling = false;
  std::string cover;
  bool finest = false;
  std::string chain;
  std::string cocycle_dir;
  std::uint64_t seed = 1;
};

struct Input {
  DoubleGroupoid dg;
  std::optional<DoubleAction> action;
};

Json group_json(const FinAbGroup& g) { return Json{{"factors", g.factors}, {"order", g.order()}}; }

Json violations_json(const ValidationReport& r) {
  Json out = Json::array();
  for (const auto& v : r.items) out.push_back(Json{{"axiom", v.axiom}, {"detail", v.detail}});
  return out;
}

// Row view of a cell: boxes by rows, H arrows as one row, V arrows as one column.
Json cell_rows(const Cell& c) {
  Json rows = Json::array();
  if (c.m == 0) {
    rows.push_back(c.e);
  } else if (c.n == 0) {
    for (Id v : c.e) rows.push_back(Json::array({v}));
  } else {
    for (int i = 0; i < c.m; ++i) {
      Json row = Json::array();
      for (int j = 0; j < c.n; ++j) row.push_back(c.at(i, j));
      rows.push_back(row);
    }
  }
  return rows;
}

Json matrix_json(const SparseMatrix& d, const Moduli& rows_mod) {
  Json entries = Json::array();
  for (int i = 0; i < d.rows(); ++i)
    for (auto [j, v] : d.row(i)) entries.push_back({i, j, v});
  return Json{{"rows", d.rows()}, {"cols", d.cols()}, {"row_moduli", rows_mod}, {"entries", entries}};
}

Input load_input(const Options& o, bool need_action) {
  Input in;
  if (o.input == "@random") {
    in.dg = random_double_groupoid(o.seed);
  } else {
    in.dg = double_groupoid_from_json(load_json(o.input));
  }
  if (need_action) {
    if (o.bundle.empty()) throw InputError("--bundle is required for " + o.command);
    in.action = action_from_json(load_json(o.bundle), in.dg);
  }
  return in;
}

// Structural problems and action violations end the command with a domain error.
void require_valid(const Input& in) {
  ValidationReport r = validate_double_groupoid(in.dg);
  if (!r.ok()) throw DomainError("input is not a double groupoid: " + r.items[0].axiom + ": " + r.items[0].detail);
  if (in.action) {
    ValidationReport a = validate_action(in.dg, *in.action);
    if (!a.ok()) throw DomainError("bundle is not an action: " + a.items[0].axiom + ": " + a.items[0].detail);
  }
}

Json header(const Options& o) {
  Json j{{"schema", 1}, {"command", o.command}, {"input", o.input}};
  if (o.input == "@random") j["seed"] = o.seed;
  return j;
}

// ---- subcommands ---------------------------------------------------------------

int cmd_validate(const Options& o, Json& rep, std::ostream& text) {
  Input in = load_input(o, !o.bundle.empty());
  ValidationReport r = validate_double_groupoid(in.dg, o.filling);
  ValidationReport a;
  if (in.action && r.ok()) a = validate_action(in.dg, *in.action);
  rep["name"] = in.dg.name;
  rep["points"] = in.dg.points;
  rep["boxes"] = in.dg.boxes();
  rep["violations"] = violations_json(r);
  if (in.action) rep["action_violations"] = violations_json(a);
  const bool ok = r.ok() && a.ok();
  rep["ok"] = ok;
  text << in.dg.name << ": " << in.dg.points << " points, " << in.dg.V.arrows() << " vertical arrows, "
       << in.dg.H.arrows() << " horizontal arrows, " << in.dg.boxes() << " boxes\n";
  for (const auto& v : r.items) text << "  violation " << v.axiom << ": " << v.detail << "\n";
  for (const auto& v : a.items) text << "  action violation " << v.axiom << ": " << v.detail << "\n";
  text << (ok ? "valid\n" : "INVALID\n");
  return ok ? 0 : 1;
}

int cmd_core(const Options& o, Json& rep, std::ostream& text) {
  Input in = load_input(o, false);
  require_valid(in);
  std::vector<Id> boxes;
  FiniteGroupoid e = core_groupoid(in.dg, &boxes);
  Json arrows = Json::array();
  for (Id a = 0; a < e.arrows(); ++a)
    arrows.push_back(Json{{"box", boxes[a]}, {"source", e.src[a]}, {"end", e.dst[a]}, {"inverse", e.inv[a]}});
  rep["objects"] = e.objects;
  rep["arrows"] = arrows;
  rep["valid"] = validate_groupoid(e, "core").ok();
  text << "core groupoid: " << e.objects << " objects, " << e.arrows() << " arrows ("
       << (rep["valid"].get<bool>() ? "valid" : "INVALID") << ")\n";
  for (Id a = 0; a < e.arrows(); ++a)
    text << "  box " << boxes[a] << ": " << e.src[a] << " -> " << e.dst[a] << "\n";
  return 0;
}

int cmd_kbundle(const Options& o, Json& rep, std::ostream& text) {
  Input in = load_input(o, false);
  require_valid(in);
  KernelBundle kb = kernel_bundle(in.dg);
  DoubleAction act = conjugation_action(in.dg, kb);
  ValidationReport r = validate_action(in.dg, act);
  Json fibers = Json::array();
  for (Id p = 0; p < in.dg.points; ++p) fibers.push_back(Json{{"point", p}, {"group", group_json(kb.bundle.fibers[p])}, {"boxes", kb.box_of[p]}});
  rep["fibers"] = fibers;
  rep["action_valid"] = r.ok();
  rep["bundle"] = action_to_json(act, in.dg);
  text << "kernel bundle:\n";
  for (Id p = 0; p < in.dg.points; ++p) text << "  point " << p << ": " << kb.bundle.fibers[p].str() << "\n";
  text << "conjugation action " << (r.ok() ? "valid" : "INVALID") << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_nerve(const Options& o, Json& rep, std::ostream& text) {
  Input in = load_input(o, false);
  require_valid(in);
  const int deg = o.degree < 0 ? 2 : o.degree;
  Nerve nv(in.dg, o.max_cells);
  Json levels = Json::array();
  text << "cells per bidegree (m,n), m,n <= " << deg << ":\n";
  for (int m = 0; m <= deg; ++m)
    for (int n = 0; n <= deg; ++n) {
      const Level& L = nv.level(m, n);
      Json l{{"bidegree", {m, n}}, {"count", L.size()}};
      if (o.dump_cells) {
        Json cells = Json::array();
        for (std::size_t i = 0; i < L.size(); ++i) cells.push_back(Json{{"index", i}, {"rows", cell_rows(L.cell(i))}});
        l["cells"] = cells;
      }
      levels.push_back(l);
      text << "  (" << m << "," << n << "): " << L.size() << "\n";
    }
  rep["levels"] = levels;
  return 0;
}

int cmd_cohomology(const Options& o, Json& rep, std::ostream& text) {
  Input in = load_input(o, true);
  require_valid(in);
  const int deg = o.degree < 0 ? 1 : o.degree;
  NerveSource src(in.dg, Normalization::Degenerate, o.max_cells);
  Bicomplex bc(src, *in.action);
  TotalComplex tot = total_complex(bc, deg);
  rep["grading"] = "H^n_Tot with A^{r,s} = D^{r+1,s+1}; H^1_Tot classifies extensions";
  Json groups = Json::array();
  text << "total cohomology (H^1_Tot classifies extensions):\n";
  for (int n = 0; n <= deg; ++n) {
    FinAbGroup g = homology(tot.cx, n).group;
    groups.push_back(Json{{"degree", n}, {"group", group_json(g)}});
    text << "  H^" << n << "_Tot = " << g.str() << "\n";
  }
  rep["cohomology"] = groups;
  if (o.dump_matrices) {
    Json ds = Json::array();
    for (int n = 0; n <= deg && n < static_cast<int>(tot.cx.d.size()); ++n) {
      Json d = matrix_json(tot.cx.d[n], tot.cx.groups[n + 1]);
      d["degree"] = n;
      d["source_moduli"] = tot.cx.groups[n];
      ds.push_back(d);
    }
    rep["differentials"] = ds;
  }
  return 0;
}

Json cocycle_json(CohomologyContext& ctx, const TotalCocycle& z, Elem cls) {
  auto part = [&](int m, int n, const std::vector<Elem>& values) {
    const Level& L = ctx.level(m, n);
    Json out = Json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0) continue;
      const Cell c = L.cell(i);
      const FinAbGroup& K = ctx.action().bundle.fibers[basepoint(ctx.dg(), c)];
      out.push_back(Json{{"rows", cell_rows(c)}, {"value", K.decode(values[i])}});
    }
    return out;
  };
  return Json{{"schema", 1}, {"kind", "cocycle"}, {"class", cls}, {"sigma", part(2, 1, z.sigma)}, {"tau", part(1, 2, z.tau)}};
}

int cmd_classify(const Options& o, Json& rep, std::ostream& text) {
  Input in = load_input(o, true);
  require_valid(in);
  CohomologyContext ctx(in.dg, *in.action, Normalization::Degenerate, o.max_cells);
  auto classes = classify_extensions(ctx);
  rep["h1"] = group_json(ctx.h1().group);
  Json rows = Json::array();
  bool all = true;
  text << "H^1_Tot = " << ctx.h1().group.str() << "\n";
  text << "class  coords  valid  cocycle\n";
  for (const auto& c : classes) {
    Json path = nullptr;
    if (!o.cocycle_dir.empty()) {
      std::filesystem::create_directories(o.cocycle_dir);
      const std::string p = (std::filesystem::path(o.cocycle_dir) / ("class_" + std::to_string(c.cls) + ".json")).string();
      std::ofstream f(p);
      if (!f) throw InputError("cannot write " + p);
      f << dump_json(cocycle_json(ctx, c.cocycle, c.cls));
      path = p;
    }
    rows.push_back(Json{{"class", c.cls}, {"coords", c.coords}, {"valid", c.valid}, {"cocycle", path}});
    all = all && c.valid;
    std::ostringstream coords;
    for (std::size_t k = 0; k < c.coords.size(); ++k) coords << (k ? "," : "") << c.coords[k];
    text << c.cls << "  (" << coords.str() << ")  " << (c.valid ? "yes" : "NO") << "  "
         << (path.is_null() ? "-" : path.get<std::string>()) << "\n";
  }
  rep["classes"] = rows;
  return all ? 0 : 1;
}

Json members_json(BisimplicialCover& c) {
  Json out = Json::array();
  for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}})
    out.push_back(Json{{"bidegree", {m, n}}, {"members", c.level(m, n).members.size()}});
  return out;
}

int cmd_cech(const Options& o, Json& rep, std::ostream& text) {
  const int modes = (o.finest ? 1 : 0) + (o.cover.empty() ? 0 : 1) + (o.chain.empty() ? 0 : 1);
  if (modes != 1) throw InputError("cech needs exactly one of --cover, --finest, --chain");
  Input in = load_input(o, true);
  require_valid(in);
  CohomologyContext ctx(in.dg, *in.action, Normalization::Degenerate, o.max_cells);
  const FinAbGroup discrete = ctx.h1().group;
  rep["discrete_h1"] = group_json(discrete);
  text << "discrete H^1_Tot = " << discrete.str() << "\n";

  if (!o.chain.empty()) {
    auto family = cover_chain_from_json(load_json(o.chain));
    ExtGroupReport r = ext_group(in.dg, *in.action, family, o.max_cells);
    Json covers = Json::array(), trans = Json::array();
    for (const auto& c : r.covers) {
      covers.push_back(Json{{"label", c.label},
                            {"cech_h1", group_json(c.cech_h1)},
                            {"opext", group_json(c.opext)},
                            {"valid_classes", c.classes},
                            {"agree", c.agree},
                            {"gluing_ok", c.gluing_ok}});
      text << "  " << c.label << ": Cech H^1 = " << c.cech_h1.str() << ", Opext = " << c.opext.str() << " ("
           << c.classes << " valid classes), " << (c.agree ? "agree" : "DISAGREE") << ", gluing "
           << (c.gluing_ok ? "ok" : "FAILED") << "\n";
    }
    for (const auto& t : r.transitions) {
      trans.push_back(Json{{"from", t.from}, {"to", t.to}, {"h1_map", t.cech_map}, {"chain_map", t.chain_map}, {"commutes", t.commutes}});
      text << "  " << t.from << " -> " << t.to << ": chain map " << (t.chain_map ? "ok" : "FAILED") << ", classification "
           << (t.commutes ? "commutes" : "DOES NOT COMMUTE") << "\n";
    }
    rep["covers"] = covers;
    rep["transitions"] = trans;
    rep["ext"] = group_json(r.ext);
    rep["ok"] = r.ok();
    text << "Ext = " << r.ext.str() << (r.ok() ? "" : " (checks FAILED)") << "\n";
    return r.ok() ? 0 : 1;
  }

  std::unique_ptr<BisimplicialCover> cov;
  if (o.finest)
    cov = finest_cover(in.dg, o.max_cells);
  else
    cov = bisimplicial_refinement(in.dg, raw_cover_from_json(load_json(o.cover)), o.max_cells);
  ValidationReport bs = check_bisimplicial(*cov, 2, 2);
  CechComplex cx(*cov, *in.action);
  const FinAbGroup h = cx.h1().group;
  rep["cover"] = cov->kind();
  rep["levels"] = members_json(*cov);
  rep["bisimplicial"] = bs.ok();
  rep["cech_h1"] = group_json(h);
  rep["matches_discrete"] = h == discrete;
  text << "cover: " << cov->kind() << (bs.ok() ? ", bisimplicial" : ", NOT bisimplicial") << "\n";
  text << "Cech H^1_Tot = " << h.str() << (h == discrete ? " (matches discrete)" : " (differs from discrete)") << "\n";
  return bs.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double groupoid cohomology and extensions"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool bundle) {
    s->add_option("input", o.input, "double groupoid JSON file, or @random with --seed")->required();
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--max-cells", o.max_cells, "cap on enumerated cells")->check(CLI::PositiveNumber);
    s->add_option("--seed", o.seed, "seed for @random input");
    if (bundle) s->add_option("--bundle", o.bundle, "bundle and action JSON file");
  };
  auto* v = app.add_subcommand("validate", "check the double groupoid axioms");
  common(v, true);
  v->add_flag("--filling", o.filling, "also check the filling condition");
  common(app.add_subcommand("core", "core groupoid"), false);
  common(app.add_subcommand("kbundle", "kernel bundle with the conjugation action"), false);
  auto* n = app.add_subcommand("nerve", "nerve cell counts");
  common(n, false);
  n->add_option("--degree", o.degree, "largest m and n (default 2)")->check(CLI::NonNegativeNumber);
  n->add_flag("--dump-cells", o.dump_cells, "include the cells in the JSON report");
  auto* c = app.add_subcommand("cohomology", "total cohomology");
  common(c, true);
  c->add_option("--degree", o.degree, "largest degree (default 1)")->check(CLI::NonNegativeNumber);
  c->add_flag("--dump-matrices", o.dump_matrices, "include the total differentials in the JSON report");
  auto* k = app.add_subcommand("classify", "classify extensions");
  common(k, true);
  k->add_option("--cocycle-dir", o.cocycle_dir, "write one representative cocycle file per class");
  auto* h = app.add_subcommand("cech", "Cech cohomology over covers");
  common(h, true);
  h->add_option("--cover", o.cover, "cover JSON file");
  h->add_flag("--finest", o.finest, "use the finest cover");
  h->add_option("--chain", o.chain, "cover chain JSON file, coarse to fine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  o.command = app.get_subcommands().front()->get_name();

  Json rep = header(o);
  std::ostringstream text;
  int code = 0;
  std::string kind, message;
  try {
    if (o.command == "validate") code = cmd_validate(o, rep, text);
    else if (o.command == "core") code = cmd_core(o, rep, text);
    else if (o.command == "kbundle") code = cmd_kbundle(o, rep, text);
    else if (o.command == "nerve") code = cmd_nerve(o, rep, text);
    else if (o.command == "cohomology") code = cmd_cohomology(o, rep, text);
    else if (o.command == "classify") code = cmd_classify(o, rep, text);
    else code = cmd_cech(o, rep, text);
  } catch (const InputError& e) {
    code = 3, kind = "input", message = e.what();
  } catch (const ResourceError& e) {
    code = 2, kind = "resource", message = e.what();
  } catch (const DomainError& e) {
    code = 1, kind = "domain", message = e.what();
  } catch (const std::exception& e) {
    code = 1, kind = "internal", message = e.what();
  }
  if (!kind.empty()) {
    if (o.format == "json") {
      rep["error"] = Json{{"kind", kind}, {"message", message}};
      std::cout << dump_json(rep);
    } else {
      std::cerr << "error (" << kind << "): " << message << "\n";
    }
    return code;
  }
  if (o.format == "json")
    std::cout << dump_json(rep);
  else
    std::cout << text.str();
  return code;
}
