#include <string>

#include "dgc/core.hpp"

namespace dgc {

namespace {

std::string ids(std::initializer_list<Id> xs) {
  std::string s = "(";
  bool first = true;
  for (Id x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

}  // namespace

DoubleGroupoid make_double_groupoid(std::string name, int points, FiniteGroupoid V, FiniteGroupoid H,
                                    std::vector<Id> t, std::vector<Id> b, std::vector<Id> l,
                                    std::vector<Id> r, const BoxFn& hcomp, const BoxFn& vcomp) {
  DoubleGroupoid dg;
  dg.name = std::move(name);
  dg.points = points;
  dg.V = std::move(V);
  dg.H = std::move(H);
  dg.t = std::move(t);
  dg.b = std::move(b);
  dg.l = std::move(l);
  dg.r = std::move(r);
  const Id n = dg.boxes();
  dg.hcomp = PartialTable(dg.r, dg.l, dg.V.arrows());
  dg.vcomp = PartialTable(dg.b, dg.t, dg.H.arrows());
  for (Id a = 0; a < n; ++a) {
    for (Id c : dg.hcomp.right_of(a)) dg.hcomp.set(a, c, hcomp(a, c));
    for (Id c : dg.vcomp.right_of(a)) dg.vcomp.set(a, c, vcomp(a, c));
  }
  dg.idd_v.assign(dg.V.arrows(), kNone);
  dg.idd_h.assign(dg.H.arrows(), kNone);
  for (Id a = 0; a < n; ++a) {
    if (dg.l[a] == dg.r[a] && dg.H.is_identity(dg.t[a]) && dg.H.is_identity(dg.b[a]) &&
        dg.hcomp.get(a, a) == a)
      dg.idd_v[dg.l[a]] = a;
    if (dg.t[a] == dg.b[a] && dg.V.is_identity(dg.l[a]) && dg.V.is_identity(dg.r[a]) &&
        dg.vcomp.get(a, a) == a)
      dg.idd_h[dg.t[a]] = a;
  }
  dg.hinv.assign(n, kNone);
  dg.vinv.assign(n, kNone);
  for (Id a = 0; a < n; ++a) {
    for (Id c : dg.hcomp.right_of(a))
      if (dg.hcomp.get(a, c) == dg.idd_v[dg.l[a]] && dg.hcomp.get(c, a) == dg.idd_v[dg.r[a]]) {
        dg.hinv[a] = c;
        break;
      }
    for (Id c : dg.vcomp.right_of(a))
      if (dg.vcomp.get(a, c) == dg.idd_h[dg.t[a]] && dg.vcomp.get(c, a) == dg.idd_h[dg.b[a]]) {
        dg.vinv[a] = c;
        break;
      }
  }
  return dg;
}

ValidationReport validate_double_groupoid(const DoubleGroupoid& dg, bool check_filling) {
  ValidationReport rep;
  for (const auto& d : dg.defects) rep.items.push_back(d);
  if (!rep.ok()) return rep;
  rep.merge(validate_groupoid(dg.V, "vertical"));
  rep.merge(validate_groupoid(dg.H, "horizontal"));
  if (rep.structural()) return rep;

  const Id n = dg.boxes();
  const Id nv = dg.V.arrows(), nh = dg.H.arrows();
  auto box_ok = [&](Id a) { return a >= 0 && a < n; };
  for (Id a = 0; a < n; ++a) {
    if (dg.t[a] < 0 || dg.t[a] >= nh || dg.b[a] < 0 || dg.b[a] >= nh || dg.l[a] < 0 || dg.l[a] >= nv ||
        dg.r[a] < 0 || dg.r[a] >= nv) {
      rep.add("structure.sides", "box " + std::to_string(a) + " has a side out of range", true);
      continue;
    }
    if (dg.H.src[dg.t[a]] != dg.V.src[dg.l[a]] || dg.H.dst[dg.t[a]] != dg.V.src[dg.r[a]] ||
        dg.H.src[dg.b[a]] != dg.V.dst[dg.l[a]] || dg.H.dst[dg.b[a]] != dg.V.dst[dg.r[a]])
      rep.add("structure.corners", "box " + std::to_string(a) + " sides do not close up", true);
  }
  if (rep.structural()) return rep;
  for (Id a = 0; a < n; ++a) {
    for (Id c : dg.hcomp.right_of(a))
      if (!box_ok(dg.hcomp.get(a, c)))
        rep.add("structure.horizontal_compose", "missing or out of range at " + ids({a, c}), true);
    for (Id c : dg.vcomp.right_of(a))
      if (!box_ok(dg.vcomp.get(a, c)))
        rep.add("structure.vertical_compose", "missing or out of range at " + ids({a, c}), true);
  }
  for (Id g = 0; g < nv; ++g)
    if (!box_ok(dg.idd_v[g])) rep.add("structure.vertical_identity", "missing for V arrow " + std::to_string(g), true);
  for (Id x = 0; x < nh; ++x)
    if (!box_ok(dg.idd_h[x]))
      rep.add("structure.horizontal_identity", "missing for H arrow " + std::to_string(x), true);
  for (Id a = 0; a < n; ++a) {
    if (!box_ok(dg.hinv[a])) rep.add("structure.horizontal_inverse", "missing for box " + std::to_string(a), true);
    if (!box_ok(dg.vinv[a])) rep.add("structure.vertical_inverse", "missing for box " + std::to_string(a), true);
  }
  if (rep.structural()) return rep;

  // Side compatibility.
  bool sides_ok = true;
  for (Id a = 0; a < n; ++a) {
    for (Id c : dg.hcomp.right_of(a)) {
      Id ac = dg.hc(a, c);
      if (dg.t[ac] != dg.H.compose(dg.t[a], dg.t[c]) || dg.b[ac] != dg.H.compose(dg.b[a], dg.b[c]) ||
          dg.l[ac] != dg.l[a] || dg.r[ac] != dg.r[c]) {
        rep.add("horizontal.sides", ids({a, c}));
        sides_ok = false;
      }
    }
    for (Id c : dg.vcomp.right_of(a)) {
      Id ac = dg.vc(a, c);
      if (dg.l[ac] != dg.V.compose(dg.l[a], dg.l[c]) || dg.r[ac] != dg.V.compose(dg.r[a], dg.r[c]) ||
          dg.t[ac] != dg.t[a] || dg.b[ac] != dg.b[c]) {
        rep.add("vertical.sides", ids({a, c}));
        sides_ok = false;
      }
    }
  }

  // Associativity; instances whose intermediate composite has wrong sides are skipped.
  for (Id a = 0; a < n; ++a)
    for (Id c : dg.hcomp.right_of(a))
      for (Id d : dg.hcomp.right_of(c)) {
        Id ac = dg.hc(a, c), cd = dg.hc(c, d);
        if (!dg.hcomp.composable(ac, d) || !dg.hcomp.composable(a, cd)) continue;
        if (dg.hc(ac, d) != dg.hc(a, cd)) rep.add("horizontal.associativity", ids({a, c, d}));
      }
  for (Id a = 0; a < n; ++a)
    for (Id c : dg.vcomp.right_of(a))
      for (Id d : dg.vcomp.right_of(c)) {
        Id ac = dg.vc(a, c), cd = dg.vc(c, d);
        if (!dg.vcomp.composable(ac, d) || !dg.vcomp.composable(a, cd)) continue;
        if (dg.vc(ac, d) != dg.vc(a, cd)) rep.add("vertical.associativity", ids({a, c, d}));
      }

  // Identities and inverses.
  for (Id g = 0; g < nv; ++g) {
    Id e = dg.idd_v[g];
    if (dg.l[e] != g || dg.r[e] != g || dg.t[e] != dg.H.ident[dg.V.src[g]] || dg.b[e] != dg.H.ident[dg.V.dst[g]])
      rep.add("horizontal.identity", "idd_V of V arrow " + std::to_string(g) + " has wrong sides");
  }
  for (Id x = 0; x < nh; ++x) {
    Id e = dg.idd_h[x];
    if (dg.t[e] != x || dg.b[e] != x || dg.l[e] != dg.V.ident[dg.H.src[x]] || dg.r[e] != dg.V.ident[dg.H.dst[x]])
      rep.add("vertical.identity", "idd_H of H arrow " + std::to_string(x) + " has wrong sides");
  }
  for (Id a = 0; a < n; ++a) {
    Id el = dg.idd_v[dg.l[a]], er = dg.idd_v[dg.r[a]];
    if (dg.hc(el, a) != a || dg.hc(a, er) != a) rep.add("horizontal.identity", "fails at box " + std::to_string(a));
    Id et = dg.idd_h[dg.t[a]], eb = dg.idd_h[dg.b[a]];
    if (dg.vc(et, a) != a || dg.vc(a, eb) != a) rep.add("vertical.identity", "fails at box " + std::to_string(a));
    Id hi = dg.hinv[a];
    if (dg.hc(a, hi) != el || dg.hc(hi, a) != er) rep.add("horizontal.inverse", "fails at box " + std::to_string(a));
    Id vi = dg.vinv[a];
    if (dg.vc(a, vi) != et || dg.vc(vi, a) != eb) rep.add("vertical.inverse", "fails at box " + std::to_string(a));
  }

  // Interchange over every compatible 2x2 array [a c ; d e].
  if (sides_ok) {
    for (Id a = 0; a < n; ++a)
      for (Id c : dg.hcomp.right_of(a))
        for (Id d : dg.vcomp.right_of(a))
          for (Id e : dg.hcomp.right_of(d)) {
            if (!dg.vcomp.composable(c, e)) continue;
            Id top = dg.hc(a, c), bot = dg.hc(d, e);
            Id left = dg.vc(a, d), right = dg.vc(c, e);
            if (!dg.vcomp.composable(top, bot) || !dg.hcomp.composable(left, right)) continue;
            if (dg.vc(top, bot) != dg.hc(left, right)) rep.add("interchange", ids({a, c, d, e}));
          }
  }

  // Identity coherence.
  for (Id g = 0; g < nv; ++g)
    for (Id h : dg.V.comp.right_of(g)) {
      Id lhs = dg.vcomp.composable(dg.idd_v[g], dg.idd_v[h]) ? dg.vc(dg.idd_v[g], dg.idd_v[h]) : kNone;
      if (lhs != dg.idd_v[dg.V.compose(g, h)]) rep.add("identity_coherence.vertical", ids({g, h}));
    }
  for (Id x = 0; x < nh; ++x)
    for (Id y : dg.H.comp.right_of(x)) {
      Id lhs = dg.hcomp.composable(dg.idd_h[x], dg.idd_h[y]) ? dg.hc(dg.idd_h[x], dg.idd_h[y]) : kNone;
      if (lhs != dg.idd_h[dg.H.compose(x, y)]) rep.add("identity_coherence.horizontal", ids({x, y}));
    }
  for (int p = 0; p < dg.points; ++p)
    if (dg.idd_v[dg.V.ident[p]] != dg.idd_h[dg.H.ident[p]])
      rep.add("identity_coherence.theta", "point " + std::to_string(p));

  if (check_filling) {
    std::vector<char> seen(static_cast<std::size_t>(nh) * nv, 0);
    for (Id a = 0; a < n; ++a) seen[static_cast<std::size_t>(dg.t[a]) * nv + dg.r[a]] = 1;
    for (Id x = 0; x < nh; ++x)
      for (Id g = 0; g < nv; ++g)
        if (dg.H.dst[x] == dg.V.src[g] && !seen[static_cast<std::size_t>(x) * nv + g])
          rep.add("filling", "no box with top " + std::to_string(x) + " and right " + std::to_string(g));
  }
  return rep;
}

Id core_act(const DoubleGroupoid& dg, Id e, Id a) {
  if (dg.tr(e) != dg.bl(a)) return kNone;
  Id top = dg.hc(dg.idd_v[dg.l[a]], a);
  Id bot = dg.hc(e, dg.idd_h[dg.b[a]]);
  if (top == kNone || bot == kNone) return kNone;
  return dg.vc(top, bot);
}

FiniteGroupoid core_groupoid(const DoubleGroupoid& dg, std::vector<Id>* boxes_out) {
  std::vector<Id> boxes, index(dg.boxes(), kNone);
  for (Id a = 0; a < dg.boxes(); ++a)
    if (dg.H.is_identity(dg.t[a]) && dg.V.is_identity(dg.r[a])) {
      index[a] = static_cast<Id>(boxes.size());
      boxes.push_back(a);
    }
  std::vector<Id> src, dst;
  for (Id a : boxes) {
    src.push_back(dg.bl(a));
    dst.push_back(dg.tr(a));
  }
  FiniteGroupoid g = make_groupoid(dg.points, src, dst, [&](Id e, Id f) {
    Id c = core_act(dg, boxes[e], boxes[f]);
    return c == kNone ? kNone : index[c];
  });
  if (boxes_out) *boxes_out = boxes;
  return g;
}

}  // namespace dgc
