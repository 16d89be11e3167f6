#include <sstream>

#include "dgc/core.hpp"

namespace dgc {

bool ValidationReport::structural() const {
  for (const auto& v : items)
    if (v.structural) return true;
  return false;
}

std::size_t ValidationReport::count(const std::string& axiom) const {
  std::size_t n = 0;
  for (const auto& v : items) n += v.axiom == axiom;
  return n;
}

void ValidationReport::merge(const ValidationReport& o, const std::string& prefix) {
  for (const auto& v : o.items) items.push_back({prefix + v.axiom, v.detail, v.structural});
}

FiniteGroupoid make_groupoid(int objects, std::vector<Id> src, std::vector<Id> dst,
                             const std::function<Id(Id, Id)>& compose) {
  FiniteGroupoid g;
  g.objects = objects;
  g.src = std::move(src);
  g.dst = std::move(dst);
  g.comp = PartialTable(g.dst, g.src, objects);
  const Id n = g.arrows();
  for (Id a = 0; a < n; ++a)
    for (Id c : g.comp.right_of(a)) g.comp.set(a, c, compose(a, c));
  g.ident.assign(objects, kNone);
  for (Id a = 0; a < n; ++a)
    if (g.src[a] == g.dst[a] && g.comp.get(a, a) == a) g.ident[g.src[a]] = a;
  g.inv.assign(n, kNone);
  for (Id a = 0; a < n; ++a)
    for (Id c : g.comp.right_of(a))
      if (g.ident[g.src[a]] != kNone && g.comp.get(a, c) == g.ident[g.src[a]]) {
        g.inv[a] = c;
        break;
      }
  return g;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g, const std::string& label) {
  ValidationReport rep;
  const Id n = g.arrows();
  auto in_range = [&](Id a) { return a >= 0 && a < n; };
  for (Id a = 0; a < n; ++a)
    if (g.src[a] < 0 || g.src[a] >= g.objects || g.dst[a] < 0 || g.dst[a] >= g.objects) {
      rep.add(label + ".structure", "arrow " + std::to_string(a) + " has an endpoint out of range", true);
      return rep;
    }
  for (int p = 0; p < g.objects; ++p)
    if (!in_range(g.ident[p]) || g.src[g.ident[p]] != p || g.dst[g.ident[p]] != p) {
      rep.add(label + ".identity", "no identity arrow at object " + std::to_string(p), true);
    }
  for (Id a = 0; a < n; ++a) {
    for (Id c : g.comp.right_of(a)) {
      Id ac = g.comp.get(a, c);
      if (!in_range(ac)) {
        rep.add(label + ".structure",
                "composition undefined or out of range at (" + std::to_string(a) + "," + std::to_string(c) + ")",
                true);
        continue;
      }
      if (g.src[ac] != g.src[a] || g.dst[ac] != g.dst[c])
        rep.add(label + ".endpoints",
                "composite of (" + std::to_string(a) + "," + std::to_string(c) + ") has wrong endpoints");
    }
  }
  if (!rep.ok()) return rep;
  for (Id a = 0; a < n; ++a)
    for (Id c : g.comp.right_of(a))
      for (Id d : g.comp.right_of(c)) {
        Id l = g.comp.get(g.comp.get(a, c), d);
        Id r = g.comp.get(a, g.comp.get(c, d));
        if (l != r)
          rep.add(label + ".associativity",
                  "(" + std::to_string(a) + "," + std::to_string(c) + "," + std::to_string(d) + ")");
      }
  for (Id a = 0; a < n; ++a) {
    if (g.comp.get(g.ident[g.src[a]], a) != a || g.comp.get(a, g.ident[g.dst[a]]) != a)
      rep.add(label + ".identity", "identity law fails at " + std::to_string(a));
    Id ai = g.inv[a];
    if (!in_range(ai) || g.comp.get(a, ai) != g.ident[g.src[a]] || g.comp.get(ai, a) != g.ident[g.dst[a]])
      rep.add(label + ".inverse", "inverse law fails at " + std::to_string(a));
  }
  return rep;
}

}  // namespace dgc
