#include <algorithm>
#include <functional>
#include <numeric>

#include "dgc/core.hpp"

namespace dgc {

namespace {

std::vector<Elem> identity_table(const FinAbGroup& g) {
  std::vector<Elem> t(g.order());
  for (Elem e = 0; e < g.order(); ++e) t[e] = e;
  return t;
}

}  // namespace

DoubleAction trivial_action(const DoubleGroupoid& dg, const AbelianGroupBundle& bundle) {
  if (bundle.points() != dg.points) throw DomainError("bundle has the wrong number of points");
  DoubleAction a;
  a.bundle = bundle;
  for (Id g = 0; g < dg.V.arrows(); ++g) {
    if (!(bundle.fibers[dg.V.src[g]] == bundle.fibers[dg.V.dst[g]]))
      throw DomainError("trivial action needs equal fibers along every arrow");
    a.v.push_back(identity_table(bundle.fibers[dg.V.dst[g]]));
  }
  for (Id x = 0; x < dg.H.arrows(); ++x) {
    if (!(bundle.fibers[dg.H.src[x]] == bundle.fibers[dg.H.dst[x]]))
      throw DomainError("trivial action needs equal fibers along every arrow");
    a.h.push_back(identity_table(bundle.fibers[dg.H.dst[x]]));
  }
  return a;
}

std::vector<Elem> table_from_matrix(const FinAbGroup& src, const FinAbGroup& dst,
                                    const std::vector<std::vector<std::int64_t>>& m) {
  if (m.size() != dst.factors.size()) throw InputError("action matrix has the wrong number of rows");
  for (const auto& row : m)
    if (row.size() != src.factors.size()) throw InputError("action matrix has the wrong number of columns");
  std::vector<Elem> t(src.order());
  for (Elem e = 0; e < src.order(); ++e) {
    auto c = src.decode(e);
    std::vector<std::int64_t> out(dst.factors.size(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < c.size(); ++j) s = (s + (m[i][j] % dst.factors[i]) * c[j]) % dst.factors[i];
      out[i] = s;
    }
    t[e] = dst.encode(out);
  }
  return t;
}

std::vector<std::vector<std::int64_t>> matrix_from_table(const FinAbGroup& src, const FinAbGroup& dst,
                                                         const std::vector<Elem>& table) {
  std::vector<std::vector<std::int64_t>> m(dst.factors.size(), std::vector<std::int64_t>(src.factors.size()));
  for (std::size_t j = 0; j < src.factors.size(); ++j) {
    std::vector<std::int64_t> unit(src.factors.size(), 0);
    unit[j] = 1;
    auto c = dst.decode(table[src.encode(unit)]);
    for (std::size_t i = 0; i < c.size(); ++i) m[i][j] = c[i];
  }
  return m;
}

ValidationReport validate_action(const DoubleGroupoid& dg, const DoubleAction& a) {
  ValidationReport rep;
  const auto& F = a.bundle.fibers;
  if (a.bundle.points() != dg.points) {
    rep.add("action.structure", "bundle has " + std::to_string(a.bundle.points()) + " points", true);
    return rep;
  }
  if (static_cast<int>(a.v.size()) != dg.V.arrows() || static_cast<int>(a.h.size()) != dg.H.arrows()) {
    rep.add("action.structure", "missing action tables", true);
    return rep;
  }
  // Each side: arrow acts fiber(from) -> fiber(to).
  struct Side {
    const char* name;
    const FiniteGroupoid& G;
    const std::vector<std::vector<Elem>>& tab;
  };
  for (const Side& s : {Side{"vertical", dg.V, a.v}, Side{"horizontal", dg.H, a.h}}) {
    for (Id g = 0; g < s.G.arrows(); ++g) {
      const FinAbGroup& from = F[s.G.dst[g]];
      const FinAbGroup& to = F[s.G.src[g]];
      const auto& t = s.tab[g];
      if (static_cast<std::int64_t>(t.size()) != from.order()) {
        rep.add(std::string(s.name) + ".fiber", "arrow " + std::to_string(g) + " table has wrong domain", true);
        continue;
      }
      bool in_range = true;
      for (Elem e : t)
        if (e < 0 || e >= to.order()) in_range = false;
      if (!in_range) {
        rep.add(std::string(s.name) + ".fiber", "arrow " + std::to_string(g) + " lands outside its fiber", true);
        continue;
      }
    }
  }
  if (rep.structural()) return rep;
  for (const Side& s : {Side{"vertical", dg.V, a.v}, Side{"horizontal", dg.H, a.h}}) {
    const std::string nm = s.name;
    for (Id g = 0; g < s.G.arrows(); ++g) {
      const FinAbGroup& from = F[s.G.dst[g]];
      const FinAbGroup& to = F[s.G.src[g]];
      const auto& t = s.tab[g];
      bool hom = true;
      for (Elem x = 0; x < from.order() && hom; ++x)
        for (Elem y = 0; y < from.order(); ++y)
          if (t[from.add(x, y)] != to.add(t[x], t[y])) {
            hom = false;
            break;
          }
      if (!hom) rep.add(nm + ".homomorphism", "arrow " + std::to_string(g));
      std::vector<char> hit(to.order(), 0);
      for (Elem e : t) hit[e] = 1;
      if (from.order() != to.order() || std::find(hit.begin(), hit.end(), 0) != hit.end())
        rep.add(nm + ".bijective", "arrow " + std::to_string(g));
      if (s.G.is_identity(g))
        for (Elem e = 0; e < from.order(); ++e)
          if (t[e] != e) {
            rep.add(nm + ".identity", "arrow " + std::to_string(g));
            break;
          }
      for (Id h : s.G.comp.right_of(g)) {
        Id gh = s.G.compose(g, h);
        const auto& th = s.tab[h];
        const auto& tgh = s.tab[gh];
        for (Elem e = 0; e < static_cast<Elem>(th.size()); ++e)
          if (tgh[e] != t[th[e]]) {
            rep.add(nm + ".functoriality", "arrows " + std::to_string(g) + "," + std::to_string(h));
            break;
          }
      }
    }
  }
  if (!rep.ok()) return rep;
  // l(A)^-1 . (t(A) . X) = b(A) . (r(A)^-1 . X) for X over tr(A).
  for (Id A = 0; A < dg.boxes(); ++A) {
    const auto& tt = a.h[dg.t[A]];
    const auto& li = a.v[dg.V.inv[dg.l[A]]];
    const auto& bb = a.h[dg.b[A]];
    const auto& ri = a.v[dg.V.inv[dg.r[A]]];
    for (Elem X = 0; X < F[dg.tr(A)].order(); ++X)
      if (li[tt[X]] != bb[ri[X]]) {
        rep.add("action.compatibility", "box " + std::to_string(A));
        break;
      }
  }
  return rep;
}

KernelBundle kernel_bundle(const DoubleGroupoid& dg) {
  KernelBundle kb;
  kb.box_of.resize(dg.points);
  kb.elem_of.assign(dg.boxes(), -1);
  for (int p = 0; p < dg.points; ++p) {
    std::vector<Id> boxes;
    std::vector<int> local(dg.boxes(), -1);
    for (Id a = 0; a < dg.boxes(); ++a)
      if (dg.in_kernel(a) && dg.tl(a) == p) {
        local[a] = static_cast<int>(boxes.size());
        boxes.push_back(a);
      }
    const int n = static_cast<int>(boxes.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Id v = dg.vc(boxes[i], boxes[j]);
        if (v != dg.hc(boxes[i], boxes[j])) throw DomainError("compositions disagree on the kernel bundle");
        if (v != dg.vc(boxes[j], boxes[i])) throw DomainError("kernel fiber is not abelian");
      }
    auto pres = present_abelian_group(n, local[dg.theta(p)],
                                      [&](int i, int j) { return local[dg.vc(boxes[i], boxes[j])]; });
    kb.bundle.fibers.push_back(pres.group);
    kb.box_of[p].resize(n);
    for (int i = 0; i < n; ++i) {
      kb.box_of[p][pres.from_elem[i]] = boxes[i];
      kb.elem_of[boxes[i]] = pres.from_elem[i];
    }
  }
  return kb;
}

DoubleAction conjugation_action(const DoubleGroupoid& dg, const KernelBundle& kb) {
  DoubleAction a;
  a.bundle = kb.bundle;
  for (Id g = 0; g < dg.V.arrows(); ++g) {
    const auto& fib = kb.box_of[dg.V.dst[g]];
    std::vector<Elem> t(fib.size());
    Id e = dg.idd_v[g], ei = dg.idd_v[dg.V.inv[g]];
    for (std::size_t k = 0; k < fib.size(); ++k) t[k] = kb.elem_of[dg.vc(dg.vc(e, fib[k]), ei)];
    a.v.push_back(std::move(t));
  }
  for (Id x = 0; x < dg.H.arrows(); ++x) {
    const auto& fib = kb.box_of[dg.H.dst[x]];
    std::vector<Elem> t(fib.size());
    Id e = dg.idd_h[x], ei = dg.idd_h[dg.H.inv[x]];
    for (std::size_t k = 0; k < fib.size(); ++k) t[k] = kb.elem_of[dg.hc(dg.hc(e, fib[k]), ei)];
    a.h.push_back(std::move(t));
  }
  return a;
}

AbelianGroupBundle constant_bundle(int points, const FinAbGroup& fiber) {
  return AbelianGroupBundle{std::vector<FinAbGroup>(points, fiber)};
}

std::vector<DoubleAction> unit_actions(const DoubleGroupoid& dg, int points, std::int64_t n, std::size_t limit) {
  FinAbGroup fib = normalize_factors({n});
  AbelianGroupBundle bundle = constant_bundle(points, fib);
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u < std::max<std::int64_t>(n, 2); ++u)
    if (std::gcd(u, n) == 1 || n == 1) units.push_back(u);
  const int nv = dg.V.arrows(), nh = dg.H.arrows();
  std::vector<std::int64_t> mv(nv, 0), mh(nh, 0);
  std::vector<DoubleAction> out;
  auto mod = [&](std::int64_t x) { return ((x % n) + n) % n; };

  auto consistent_v = [&](Id g) {
    if (dg.V.is_identity(g) && mod(mv[g]) != mod(1)) return false;
    for (Id h = 0; h <= g; ++h) {
      if (dg.V.comp.composable(g, h)) {
        Id c = dg.V.compose(g, h);
        if (c <= g && mod(mv[c]) != mod(mv[g] * mv[h])) return false;
      }
      if (dg.V.comp.composable(h, g)) {
        Id c = dg.V.compose(h, g);
        if (c <= g && mod(mv[c]) != mod(mv[h] * mv[g])) return false;
      }
    }
    return true;
  };
  auto consistent_h = [&](Id x) {
    if (dg.H.is_identity(x) && mod(mh[x]) != mod(1)) return false;
    for (Id y = 0; y <= x; ++y) {
      if (dg.H.comp.composable(x, y)) {
        Id c = dg.H.compose(x, y);
        if (c <= x && mod(mh[c]) != mod(mh[x] * mh[y])) return false;
      }
      if (dg.H.comp.composable(y, x)) {
        Id c = dg.H.compose(y, x);
        if (c <= x && mod(mh[c]) != mod(mh[y] * mh[x])) return false;
      }
    }
    return true;
  };
  auto emit = [&]() {
    DoubleAction a;
    a.bundle = bundle;
    for (Id g = 0; g < nv; ++g) a.v.push_back(table_from_matrix(fib, fib, {{mv[g]}}));
    for (Id x = 0; x < nh; ++x) a.h.push_back(table_from_matrix(fib, fib, {{mh[x]}}));
    if (fib.factors.empty()) {
      a.v.assign(nv, {0});
      a.h.assign(nh, {0});
    }
    if (validate_action(dg, a).ok()) out.push_back(std::move(a));
  };
  std::function<void(int)> rec = [&](int i) {
    if (out.size() >= limit) return;
    if (i == nv + nh) {
      emit();
      return;
    }
    for (auto u : units) {
      if (i < nv) {
        mv[i] = u;
        if (consistent_v(i)) rec(i + 1);
      } else {
        mh[i - nv] = u;
        if (consistent_h(i - nv)) rec(i + 1);
      }
    }
  };
  rec(0);
  return out;
}

}  // namespace dgc
