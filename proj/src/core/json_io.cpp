#include "dgc/json_io.hpp"

#include <fstream>

namespace dgc {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Id> id_list(const Json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array");
  std::vector<Id> v;
  for (const auto& x : j) {
    require(x.is_number_integer(), what + " must contain integers");
    v.push_back(x.get<Id>());
  }
  return v;
}

std::vector<std::vector<Id>> tuples(const Json& j, std::size_t width, const std::string& what) {
  require(j.is_array(), what + " must be an array");
  std::vector<std::vector<Id>> out;
  for (const auto& x : j) {
    auto v = id_list(x, what);
    require(v.size() == width, what + " entries must have length " + std::to_string(width));
    out.push_back(std::move(v));
  }
  return out;
}

struct Defects {
  std::vector<Violation>& out;
  void add(const std::string& axiom, const std::string& detail) { out.push_back({axiom, detail, true}); }
  // Keeps v in [0,n); records a defect otherwise.
  Id clamp(Id v, int n, const std::string& axiom, const std::string& detail) {
    if (v >= 0 && v < n) return v;
    add(axiom, detail + " = " + std::to_string(v) + " out of range");
    return n > 0 ? 0 : kNone;
  }
};

FiniteGroupoid groupoid_from_json(const Json& j, int points, const std::string& label, Defects& d) {
  FiniteGroupoid g;
  g.objects = points;
  auto arrows = tuples(field(j, "arrows"), 2, label + ".arrows");
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    g.src.push_back(d.clamp(arrows[a][0], points, "structure." + label, "arrow " + std::to_string(a) + " source"));
    g.dst.push_back(d.clamp(arrows[a][1], points, "structure." + label, "arrow " + std::to_string(a) + " end"));
  }
  const int n = g.arrows();
  auto ident = id_list(field(j, "identities"), label + ".identities");
  require(static_cast<int>(ident.size()) == points, label + ".identities needs one entry per point");
  for (int p = 0; p < points; ++p)
    g.ident.push_back(d.clamp(ident[p], n, "structure." + label, "identity of point " + std::to_string(p)));
  auto inv = id_list(field(j, "inverse"), label + ".inverse");
  require(static_cast<int>(inv.size()) == n, label + ".inverse needs one entry per arrow");
  for (int a = 0; a < n; ++a)
    g.inv.push_back(d.clamp(inv[a], n, "structure." + label, "inverse of arrow " + std::to_string(a)));
  if (!d.out.empty()) return g;
  g.comp = PartialTable(g.dst, g.src, points);
  for (const auto& c : tuples(field(j, "compose"), 3, label + ".compose")) {
    if (c[0] < 0 || c[0] >= n || c[1] < 0 || c[1] >= n) {
      d.add("structure." + label, "composition entry refers to a missing arrow");
      continue;
    }
    if (!g.comp.composable(c[0], c[1])) {
      d.add("structure." + label, "composition given for a non-composable pair");
      continue;
    }
    g.comp.set(c[0], c[1], d.clamp(c[2], n, "structure." + label, "composite"));
  }
  return g;
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json arrows = Json::array(), comp = Json::array();
  for (Id a = 0; a < g.arrows(); ++a) arrows.push_back({g.src[a], g.dst[a]});
  for (Id a = 0; a < g.arrows(); ++a)
    for (Id b : g.comp.right_of(a)) comp.push_back({a, b, g.compose(a, b)});
  return Json{{"arrows", arrows}, {"identities", g.ident}, {"compose", comp}, {"inverse", g.inv}};
}

FinAbGroup fiber_from_json(const Json& j) {
  require(j.is_array(), "fiber must be an array of invariant factors");
  FinAbGroup g;
  for (const auto& x : j) {
    require(x.is_number_integer() && x.get<std::int64_t>() >= 2, "invariant factors must be integers >= 2");
    g.factors.push_back(x.get<std::int64_t>());
  }
  for (std::size_t i = 1; i < g.factors.size(); ++i)
    require(g.factors[i] % g.factors[i - 1] == 0, "fiber must be in invariant-factor form");
  require(g.order() <= (1 << 20), "fiber too large");
  return g;
}

}  // namespace

void check_header(const Json& j, const std::string& kind) {
  require(j.is_object(), "document must be a JSON object");
  const Json& s = field(j, "schema");
  require(s.is_number_integer() && s.get<int>() == 1, "unsupported schema version");
  const Json& k = field(j, "kind");
  require(k.is_string() && k.get<std::string>() == kind, "expected kind '" + kind + "'");
}

namespace {

bool flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

void dump_to(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(k).dump() + ": ";
      dump_to(v, indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      dump_to(v, indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ", ";
      first = false;
      out += v.dump();
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_to(j, 0, out);
  return out + "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

DoubleGroupoid double_groupoid_from_json(const Json& j) {
  try {
    check_header(j, "double_groupoid");
    DoubleGroupoid dg;
    Defects d{dg.defects};
    if (j.contains("name")) {
      require(j.at("name").is_string(), "name must be a string");
      dg.name = j.at("name").get<std::string>();
    }
    const Json& pts = field(j, "points");
    require(pts.is_number_integer() && pts.get<int>() >= 0, "points must be a nonnegative integer");
    dg.points = pts.get<int>();
    dg.V = groupoid_from_json(field(j, "vertical"), dg.points, "vertical", d);
    dg.H = groupoid_from_json(field(j, "horizontal"), dg.points, "horizontal", d);
    const int nv = dg.V.arrows(), nh = dg.H.arrows();
    auto boxes = tuples(field(j, "boxes"), 4, "boxes");
    const int n = static_cast<int>(boxes.size());
    for (int a = 0; a < n; ++a) {
      std::string s = "box " + std::to_string(a);
      dg.t.push_back(d.clamp(boxes[a][0], nh, "structure.sides", s + " top"));
      dg.b.push_back(d.clamp(boxes[a][1], nh, "structure.sides", s + " bottom"));
      dg.l.push_back(d.clamp(boxes[a][2], nv, "structure.sides", s + " left"));
      dg.r.push_back(d.clamp(boxes[a][3], nv, "structure.sides", s + " right"));
    }
    if (!dg.defects.empty()) return dg;
    dg.hcomp = PartialTable(dg.r, dg.l, nv);
    dg.vcomp = PartialTable(dg.b, dg.t, nh);
    for (auto [key, tab] : {std::pair<const char*, PartialTable*>{"horizontal_compose", &dg.hcomp},
                            std::pair<const char*, PartialTable*>{"vertical_compose", &dg.vcomp}}) {
      for (const auto& c : tuples(field(j, key), 3, key)) {
        if (c[0] < 0 || c[0] >= n || c[1] < 0 || c[1] >= n) {
          d.add(std::string("structure.") + key, "entry refers to a missing box");
          continue;
        }
        if (!tab->composable(c[0], c[1])) {
          d.add(std::string("structure.") + key, "entry given for a non-composable pair");
          continue;
        }
        tab->set(c[0], c[1], d.clamp(c[2], n, std::string("structure.") + key, "composite"));
      }
    }
    auto load_map = [&](const char* key, int size, int range, std::vector<Id>& out) {
      auto v = id_list(field(j, key), key);
      require(static_cast<int>(v.size()) == size, std::string(key) + " has the wrong length");
      for (int i = 0; i < size; ++i) out.push_back(d.clamp(v[i], range, std::string("structure.") + key, "entry " + std::to_string(i)));
    };
    load_map("vertical_identity", nv, n, dg.idd_v);
    load_map("horizontal_identity", nh, n, dg.idd_h);
    load_map("horizontal_inverse", n, n, dg.hinv);
    load_map("vertical_inverse", n, n, dg.vinv);
    return dg;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

Json double_groupoid_to_json(const DoubleGroupoid& dg) {
  Json boxes = Json::array(), hc = Json::array(), vc = Json::array();
  for (Id a = 0; a < dg.boxes(); ++a) {
    boxes.push_back({dg.t[a], dg.b[a], dg.l[a], dg.r[a]});
    for (Id c : dg.hcomp.right_of(a)) hc.push_back({a, c, dg.hc(a, c)});
    for (Id c : dg.vcomp.right_of(a)) vc.push_back({a, c, dg.vc(a, c)});
  }
  return Json{{"schema", 1},
              {"kind", "double_groupoid"},
              {"name", dg.name},
              {"points", dg.points},
              {"vertical", groupoid_to_json(dg.V)},
              {"horizontal", groupoid_to_json(dg.H)},
              {"boxes", boxes},
              {"horizontal_compose", hc},
              {"vertical_compose", vc},
              {"vertical_identity", dg.idd_v},
              {"horizontal_identity", dg.idd_h},
              {"horizontal_inverse", dg.hinv},
              {"vertical_inverse", dg.vinv}};
}

DoubleAction action_from_json(const Json& j, const DoubleGroupoid& dg) {
  try {
    check_header(j, "bundle");
    DoubleAction a;
    const Json& fibers = field(j, "fibers");
    require(fibers.is_array(), "fibers must be an array");
    for (const auto& f : fibers) a.bundle.fibers.push_back(fiber_from_json(f));
    require(a.bundle.points() == dg.points, "bundle needs one fiber per point");
    const auto& F = a.bundle.fibers;
    auto fill = [&](const char* key, const FiniteGroupoid& G, std::vector<std::vector<Elem>>& tabs) {
      tabs.assign(G.arrows(), {});
      std::vector<char> given(G.arrows(), 0);
      if (j.contains(key))
        for (const auto& e : j.at(key)) {
          const Json& aj = field(e, "arrow");
          require(aj.is_number_integer(), "arrow must be an integer");
          Id g = aj.get<Id>();
          require(g >= 0 && g < G.arrows(), std::string(key) + ": arrow out of range");
          require(!given[g], std::string(key) + ": arrow listed twice");
          given[g] = 1;
          const FinAbGroup& from = F[G.dst[g]];
          const FinAbGroup& to = F[G.src[g]];
          if (e.contains("matrix")) {
            auto m = e.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
            tabs[g] = table_from_matrix(from, to, m);
          } else {
            const Json& t = field(e, "table");
            require(t.is_array() && static_cast<std::int64_t>(t.size()) == from.order(),
                    std::string(key) + ": table needs one entry per source element");
            for (const auto& row : t) {
              auto c = row.get<std::vector<std::int64_t>>();
              require(c.size() == to.factors.size(), std::string(key) + ": table entry has wrong length");
              bool ok = true;
              for (std::size_t i = 0; i < c.size(); ++i) ok = ok && c[i] >= 0 && c[i] < to.factors[i];
              tabs[g].push_back(ok ? to.encode(c) : to.order());  // out of range, caught by validation
            }
          }
        }
      for (Id g = 0; g < G.arrows(); ++g)
        if (!given[g]) {
          const FinAbGroup& from = F[G.dst[g]];
          tabs[g].resize(from.order());
          for (Elem e = 0; e < from.order(); ++e) tabs[g][e] = e;
        }
    };
    fill("vertical_action", dg.V, a.v);
    fill("horizontal_action", dg.H, a.h);
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

Json action_to_json(const DoubleAction& a, const DoubleGroupoid& dg) {
  Json fibers = Json::array();
  for (const auto& f : a.bundle.fibers) fibers.push_back(f.factors);
  auto dump = [&](const FiniteGroupoid& G, const std::vector<std::vector<Elem>>& tabs) {
    Json out = Json::array();
    for (Id g = 0; g < G.arrows(); ++g) {
      const FinAbGroup& from = a.bundle.fibers[G.dst[g]];
      const FinAbGroup& to = a.bundle.fibers[G.src[g]];
      bool ident = from == to;
      for (Elem e = 0; ident && e < from.order(); ++e) ident = tabs[g][e] == e;
      if (ident) continue;
      out.push_back(Json{{"arrow", g}, {"matrix", matrix_from_table(from, to, tabs[g])}});
    }
    return out;
  };
  return Json{{"schema", 1},
              {"kind", "bundle"},
              {"fibers", fibers},
              {"vertical_action", dump(dg.V, a.v)},
              {"horizontal_action", dump(dg.H, a.h)}};
}

}  // namespace dgc
