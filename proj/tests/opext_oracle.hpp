#pragma once

// Exhaustive count of extension classes: every double groupoid structure on
// the boxes (k,F), k in K_{bl F}, lying over F, with the kernel embedded as
// k -> (k, Theta_p) and inducing the given action, up to relabelings inside
// the fibers over boxes other than Theta_p.
//
// Horizontal tables split over the components of the horizontal groupoid, so
// they are enumerated per component and reduced to orbit representatives.
// Vertical tables are then searched against each representative, and the
// compatible ones are reduced modulo its stabilizer.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dgc/extensions.hpp"

namespace dgc::oracle {

struct OpextCount {
  std::size_t horizontal = 0;  // horizontal tables, all components combined
  std::size_t vertical = 0;    // vertical tables compatible with some representative
  std::size_t structures = 0;  // valid extensions
  std::size_t classes = 0;     // orbits
  bool capped = false;
};

namespace detail {

using Slot = std::pair<Id, Id>;
using Table = std::vector<Id>;
using Perm = std::vector<Id>;

struct Frame {
  const DoubleGroupoid* dg;
  std::vector<Id> offset, base;  // box -> F, F -> first box
  std::vector<Id> t, b, l, r;
  int boxes = 0;
};

struct Slots {
  std::vector<Slot> list;
  std::map<Slot, int> index;

  int at(Id u, Id w) const {
    auto it = index.find({u, w});
    return it == index.end() ? -1 : it->second;
  }
};

inline bool composable(const Frame& fr, int dir, Id u, Id w) {
  return dir == 0 ? fr.r[u] == fr.l[w] : fr.b[u] == fr.t[w];
}

inline Slots make_slots(const Frame& fr, int dir, const std::vector<bool>& keep) {
  Slots s;
  for (Id u = 0; u < fr.boxes; ++u)
    for (Id w = 0; w < fr.boxes; ++w)
      if (keep[u] && keep[w] && composable(fr, dir, u, w)) {
        s.index[{u, w}] = static_cast<int>(s.list.size());
        s.list.push_back({u, w});
      }
  return s;
}

// Backtracking over one composition table obeying projection, kernel
// additivity, cancellation and associativity. extra(tab, s) adds constraints on
// a freshly set slot; leaf(tab) returns false to stop.
inline void search_direction(const Frame& fr, const DoubleAction& a, int dir, const Slots& sl,
                             const std::function<bool(const Table&, int)>& extra,
                             const std::function<bool(const Table&)>& leaf) {
  const DoubleGroupoid& dg = *fr.dg;
  const auto& K = a.bundle.fibers;
  const int n = fr.boxes;
  const auto& slots = sl.list;
  auto fcomp = [&](Id F, Id G) { return dir == 0 ? dg.hc(F, G) : dg.vc(F, G); };
  Table tab(slots.size(), kNone);
  // kernel entries are fixed; both compositions agree on the kernel
  std::vector<bool> fixed(slots.size(), false);
  for (Id p = 0; p < dg.points; ++p) {
    Id th = dg.theta(p);
    for (Elem k = 0; k < K[p].order(); ++k)
      for (Elem m = 0; m < K[p].order(); ++m) {
        int s = sl.at(fr.offset[th] + static_cast<Id>(k), fr.offset[th] + static_cast<Id>(m));
        if (s < 0) continue;
        tab[s] = fr.offset[th] + static_cast<Id>(K[p].add(k, m));
        fixed[s] = true;
      }
  }
  auto get = [&](Id u, Id w) -> Id {
    int s = sl.at(u, w);
    return s < 0 ? kNone : tab[s];
  };
  // slots by left and right argument, for the associativity scans
  std::vector<std::vector<int>> by_left(n), by_right(n);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    by_left[slots[s].first].push_back(static_cast<int>(s));
    by_right[slots[s].second].push_back(static_cast<int>(s));
  }
  auto consistent = [&](int s) {
    auto [u, w] = slots[s];
    Id v = tab[s];
    // cancellation
    for (int s2 : by_left[u])
      if (s2 != s && tab[s2] == v) return false;
    for (int s2 : by_right[w])
      if (s2 != s && tab[s2] == v) return false;
    // (u w) y = u (w y)
    for (int s2 : by_left[w]) {
      Id y = slots[s2].second, wy = tab[s2];
      if (wy == kNone) continue;
      Id vy = get(v, y), lhs = get(u, wy);
      if (vy != kNone && lhs != kNone && lhs != vy) return false;
    }
    // y (u w) = (y u) w
    for (int s2 : by_right[u]) {
      Id y = slots[s2].first, yu = tab[s2];
      if (yu == kNone) continue;
      Id yv = get(y, v), rhs = get(yu, w);
      if (yv != kNone && rhs != kNone && rhs != yv) return false;
    }
    // this entry as an outer product
    for (int s2 = 0; s2 < static_cast<int>(slots.size()); ++s2) {
      if (tab[s2] == kNone) continue;
      auto [x, y] = slots[s2];
      if (tab[s2] == u) {  // (x y) w = x (y w)
        Id yw = get(y, w);
        if (yw != kNone) {
          Id rhs = get(x, yw);
          if (rhs != kNone && rhs != v) return false;
        }
      }
      if (tab[s2] == w) {  // u (x y) = (u x) y
        Id ux = get(u, x);
        if (ux != kNone) {
          Id lhs = get(ux, y);
          if (lhs != kNone && lhs != v) return false;
        }
      }
    }
    return extra(tab, s);
  };
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (fixed[s] && !consistent(static_cast<int>(s))) return;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (stop) return;
    if (s == slots.size()) {
      if (!leaf(tab)) stop = true;
      return;
    }
    if (fixed[s]) {
      rec(s + 1);
      return;
    }
    auto [u, w] = slots[s];
    Id target = fcomp(fr.base[u], fr.base[w]);
    Id lo = fr.offset[target];
    Elem cnt = K[dg.bl(target)].order();
    for (Elem k = 0; k < cnt && !stop; ++k) {
      tab[s] = lo + static_cast<Id>(k);
      if (consistent(static_cast<int>(s))) rec(s + 1);
    }
    tab[s] = kNone;
  };
  rec(0);
}

inline Table transport(const Table& tab, const Slots& sl, const Perm& pi) {
  Table o(tab.size());
  for (std::size_t s = 0; s < sl.list.size(); ++s) o[sl.at(pi[sl.list[s].first], pi[sl.list[s].second])] = pi[tab[s]];
  return o;
}

// All permutations of the fibers over the given boxes, identity elsewhere.
inline std::vector<Perm> relabelings(const Frame& fr, const std::vector<Id>& fboxes) {
  Perm id(fr.boxes);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> out{id};
  for (Id f : fboxes) {
    Id lo = fr.offset[f], hi = f + 1 < static_cast<Id>(fr.offset.size()) ? fr.offset[f + 1] : fr.boxes;
    std::vector<Id> local(hi - lo);
    std::iota(local.begin(), local.end(), lo);
    std::vector<Perm> next;
    do {
      for (const auto& p : out) {
        Perm q = p;
        for (Id i = lo; i < hi; ++i) q[i] = local[i - lo];
        next.push_back(std::move(q));
      }
    } while (std::next_permutation(local.begin(), local.end()));
    out.swap(next);
  }
  return out;
}

inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

struct Orbit {
  Table rep;
  std::size_t size = 0;
  std::vector<Perm> stabilizer;
};

inline std::vector<Orbit> orbits(const std::vector<Table>& all, const Slots& sl, const std::vector<Perm>& group) {
  std::set<Table> members(all.begin(), all.end()), seen;
  std::vector<Orbit> out;
  for (const auto& st : all) {
    if (seen.count(st)) continue;
    Orbit o;
    o.rep = st;
    for (const auto& g : group) {
      Table y = transport(st, sl, g);
      if (!members.count(y)) throw DomainError("valid structures are not closed under relabeling");
      if (y == st) o.stabilizer.push_back(g);
      if (seen.insert(y).second) ++o.size;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace detail

inline OpextCount opext_count(const DoubleGroupoid& dg, const DoubleAction& a, std::size_t cap = 200000) {
  using namespace detail;
  const auto& K = a.bundle.fibers;
  Frame fr;
  fr.dg = &dg;
  for (Id f = 0; f < dg.boxes(); ++f) {
    fr.offset.push_back(fr.boxes);
    for (Elem k = 0; k < K[dg.bl(f)].order(); ++k) {
      fr.base.push_back(f);
      fr.t.push_back(dg.t[f]);
      fr.b.push_back(dg.b[f]);
      fr.l.push_back(dg.l[f]);
      fr.r.push_back(dg.r[f]);
      ++fr.boxes;
    }
  }
  const int n = fr.boxes;
  std::vector<bool> is_theta(dg.boxes(), false);
  for (Id p = 0; p < dg.points; ++p) is_theta[dg.theta(p)] = true;

  // components of the horizontal groupoid, objects = vertical arrows
  std::vector<Id> comp(dg.V.arrows());
  std::iota(comp.begin(), comp.end(), 0);
  std::function<Id(Id)> find = [&](Id x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (Id f = 0; f < dg.boxes(); ++f) comp[find(dg.l[f])] = find(dg.r[f]);
  std::map<Id, std::vector<Id>> comp_boxes;
  for (Id f = 0; f < dg.boxes(); ++f) comp_boxes[find(dg.l[f])].push_back(f);

  OpextCount res;
  struct Part {
    Slots sl;
    std::vector<Orbit> orbits;
  };
  std::vector<Part> parts;
  res.horizontal = 1;
  for (const auto& [root, fboxes] : comp_boxes) {
    std::vector<bool> keep(n, false);
    std::vector<Id> moving;
    for (Id f : fboxes) {
      for (Id u = 0; u < n; ++u)
        if (fr.base[u] == f) keep[u] = true;
      if (!is_theta[f]) moving.push_back(f);
    }
    Part part;
    part.sl = make_slots(fr, 0, keep);
    std::vector<Table> all;
    search_direction(fr, a, 0, part.sl, [](const Table&, int) { return true; }, [&](const Table& t) {
      if (all.size() >= cap) {
        res.capped = true;
        return false;
      }
      all.push_back(t);
      return true;
    });
    res.horizontal *= all.size();
    part.orbits = orbits(all, part.sl, relabelings(fr, moving));
    parts.push_back(std::move(part));
  }
  if (res.capped || res.horizontal == 0) return res;

  std::vector<bool> all_boxes(n, true);
  Slots hs = make_slots(fr, 0, all_boxes), vs = make_slots(fr, 1, all_boxes);
  // interchange instances: v(h(u,w), h(y,z)) = h(v(u,y), v(w,z))
  struct Quad {
    Id u, w, y, z;
  };
  std::vector<Quad> quads;
  for (auto [u, w] : hs.list)
    for (Id y = 0; y < n; ++y) {
      if (!composable(fr, 1, u, y)) continue;
      for (Id z = 0; z < n; ++z)
        if (composable(fr, 1, w, z) && composable(fr, 0, y, z)) quads.push_back({u, w, y, z});
    }

  std::vector<std::size_t> pick(parts.size(), 0);
  for (;;) {
    // assemble a representative horizontal table and its stabilizer
    Table h(hs.list.size(), kNone);
    std::size_t orbit_size = 1;
    std::vector<Perm> stab{Perm(n)};
    std::iota(stab[0].begin(), stab[0].end(), 0);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      const Orbit& o = parts[c].orbits[pick[c]];
      for (std::size_t s = 0; s < parts[c].sl.list.size(); ++s)
        h[hs.at(parts[c].sl.list[s].first, parts[c].sl.list[s].second)] = o.rep[s];
      orbit_size *= o.size;
      std::vector<Perm> next;
      for (const auto& g : stab)
        for (const auto& q : o.stabilizer) next.push_back(compose(g, q));
      stab.swap(next);
    }
    auto H = [&](Id x, Id y) { return h[hs.at(x, y)]; };

    std::vector<std::vector<int>> touching(vs.list.size());
    for (std::size_t q = 0; q < quads.size(); ++q) {
      const Quad& Q = quads[q];
      touching[vs.at(Q.u, Q.y)].push_back(static_cast<int>(q));
      touching[vs.at(Q.w, Q.z)].push_back(static_cast<int>(q));
      touching[vs.at(H(Q.u, Q.w), H(Q.y, Q.z))].push_back(static_cast<int>(q));
    }
    auto interchange = [&](const Table& v, int s) {
      for (int q : touching[s]) {
        const Quad& Q = quads[q];
        Id uy = v[vs.at(Q.u, Q.y)], wz = v[vs.at(Q.w, Q.z)], top = v[vs.at(H(Q.u, Q.w), H(Q.y, Q.z))];
        if (uy == kNone || wz == kNone || top == kNone) continue;
        if (top != H(uy, wz)) return false;
      }
      return true;
    };

    std::vector<Table> valid;
    std::size_t seen_v = 0;
    search_direction(fr, a, 1, vs, interchange, [&](const Table& v) {
      if (++seen_v > cap) {
        res.capped = true;
        return false;
      }
      ExtensionPresentation e;
      e.total = make_double_groupoid("candidate", dg.points, dg.V, dg.H, fr.t, fr.b, fr.l, fr.r,
                                     [&](Id x, Id y) { return H(x, y); },
                                     [&](Id x, Id y) { return v[vs.at(x, y)]; });
      e.proj = fr.base;
      e.iota.resize(dg.points);
      for (Id p = 0; p < dg.points; ++p)
        for (Elem k = 0; k < K[p].order(); ++k) e.iota[p].push_back(fr.offset[dg.theta(p)] + static_cast<Id>(k));
      if (e.total.defects.empty() && validate_extension(dg, a, e).ok()) valid.push_back(v);
      return true;
    });
    if (res.capped) return res;
    res.vertical += seen_v;
    res.structures += orbit_size * valid.size();
    res.classes += orbits(valid, vs, stab).size();

    std::size_t c = 0;
    while (c < parts.size() && ++pick[c] == parts[c].orbits.size()) pick[c++] = 0;
    if (c == parts.size()) break;
  }
  return res;
}

}  // namespace dgc::oracle
