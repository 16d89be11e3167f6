#include "dgc/extensions.hpp"

namespace dgc {

Id smash_box(const ExtensionPresentation& e, Id f, Elem k) {
  for (Id u = 0; u < static_cast<Id>(e.proj.size()); ++u)
    if (e.proj[u] == f) return u + static_cast<Id>(k);
  throw DomainError("box has no fiber");
}

ExtensionPresentation smash_product(const DoubleGroupoid& dg, const DoubleAction& a, const TotalCocycle& z) {
  Level l21 = enumerate_level(dg, 2, 1);
  Level l12 = enumerate_level(dg, 1, 2);
  if (z.sigma.size() != l21.size() || z.tau.size() != l12.size()) throw InputError("cocycle does not match the nerve");
  const auto& K = a.bundle.fibers;
  std::vector<Id> offset(dg.boxes());
  ExtensionPresentation e;
  DoubleGroupoid& T = e.total;
  T.name = "smash(" + dg.name + ")";
  T.points = dg.points;
  T.V = dg.V;
  T.H = dg.H;
  for (Id f = 0; f < dg.boxes(); ++f) {
    offset[f] = T.boxes();
    for (Elem k = 0; k < K[dg.bl(f)].order(); ++k) {
      T.t.push_back(dg.t[f]);
      T.b.push_back(dg.b[f]);
      T.l.push_back(dg.l[f]);
      T.r.push_back(dg.r[f]);
      e.proj.push_back(f);
    }
  }
  auto box = [&](Elem k, Id f) { return offset[f] + static_cast<Id>(k); };
  auto elem = [&](Id u) { return static_cast<Elem>(u - offset[e.proj[u]]); };
  T.hcomp = PartialTable(T.r, T.l, dg.V.arrows());
  T.vcomp = PartialTable(T.b, T.t, dg.H.arrows());
  for (Id u = 0; u < T.boxes(); ++u) {
    const Id F = e.proj[u];
    const FinAbGroup& k = K[dg.bl(F)];
    for (Id w : T.hcomp.right_of(u)) {
      const Id G = e.proj[w];
      Elem tau = z.tau[l12.index({1, 2, {F, G}})];
      T.hcomp.set(u, w, box(k.add(k.add(elem(u), a.act_h(dg.b[F], elem(w))), tau), dg.hc(F, G)));
    }
    for (Id w : T.vcomp.right_of(u)) {
      const Id G = e.proj[w];
      const FinAbGroup& kg = K[dg.bl(G)];
      Elem sigma = z.sigma[l21.index({2, 1, {F, G}})];
      T.vcomp.set(u, w, box(kg.add(kg.add(a.act_v(dg.V.inv[dg.l[G]], elem(u)), elem(w)), sigma), dg.vc(F, G)));
    }
  }
  for (Id g = 0; g < dg.V.arrows(); ++g) T.idd_v.push_back(box(0, dg.idd_v[g]));
  for (Id x = 0; x < dg.H.arrows(); ++x) T.idd_h.push_back(box(0, dg.idd_h[x]));
  T.hinv.resize(T.boxes());
  T.vinv.resize(T.boxes());
  for (Id u = 0; u < T.boxes(); ++u) {
    const Id F = e.proj[u];
    const FinAbGroup& k = K[dg.bl(F)];
    const Id Fh = dg.hinv[F], Fv = dg.vinv[F];
    Elem tau = z.tau[l12.index({1, 2, {F, Fh}})];
    T.hinv[u] = box(a.act_h(dg.H.inv[dg.b[F]], k.sub(k.neg(elem(u)), tau)), Fh);
    const FinAbGroup& kv = K[dg.bl(Fv)];
    Elem sigma = z.sigma[l21.index({2, 1, {F, Fv}})];
    T.vinv[u] = box(kv.sub(kv.neg(a.act_v(dg.l[F], elem(u))), sigma), Fv);
  }
  e.iota.resize(dg.points);
  for (Id p = 0; p < dg.points; ++p)
    for (Elem k = 0; k < K[p].order(); ++k) e.iota[p].push_back(box(k, dg.theta(p)));
  return e;
}

ValidationReport validate_extension(const DoubleGroupoid& dg, const DoubleAction& action, const ExtensionPresentation& e) {
  ValidationReport rep;
  const DoubleGroupoid& T = e.total;
  rep.merge(validate_double_groupoid(T), "total: ");
  if (rep.structural()) return rep;
  if (T.points != dg.points || T.V.arrows() != dg.V.arrows() || T.H.arrows() != dg.H.arrows()) {
    rep.add("extension", "side groupoids differ from the base", true);
    return rep;
  }
  std::vector<bool> hit(dg.boxes(), false);
  for (Id u = 0; u < T.boxes(); ++u) {
    const Id F = e.proj[u];
    hit[F] = true;
    if (T.t[u] != dg.t[F] || T.b[u] != dg.b[F] || T.l[u] != dg.l[F] || T.r[u] != dg.r[F])
      rep.add("projection", "box " + std::to_string(u) + " changes sides");
    for (Id w : T.hcomp.right_of(u))
      if (e.proj[T.hc(u, w)] != dg.hc(F, e.proj[w])) rep.add("projection", "horizontal composition not preserved");
    for (Id w : T.vcomp.right_of(u))
      if (e.proj[T.vc(u, w)] != dg.vc(F, e.proj[w])) rep.add("projection", "vertical composition not preserved");
  }
  for (Id F = 0; F < dg.boxes(); ++F)
    if (!hit[F]) rep.add("projection", "not surjective onto box " + std::to_string(F));
  const auto& K = action.bundle.fibers;
  for (Id p = 0; p < dg.points; ++p) {
    if (static_cast<Elem>(e.iota[p].size()) != K[p].order()) {
      rep.add("kernel", "embedding has the wrong size", true);
      continue;
    }
    for (Elem k = 0; k < K[p].order(); ++k) {
      if (e.proj[e.iota[p][k]] != dg.theta(p)) rep.add("kernel", "embedding leaves the kernel");
      for (Elem m = 0; m < K[p].order(); ++m)
        if (T.hc(e.iota[p][k], e.iota[p][m]) != e.iota[p][K[p].add(k, m)]) rep.add("kernel", "embedding is not additive");
    }
  }
  if (!rep.ok()) return rep;
  // induced action
  for (Id g = 0; g < dg.V.arrows(); ++g) {
    const Id p = dg.V.dst[g];
    for (Elem k = 0; k < K[p].order(); ++k) {
      Id c = T.vc(T.vc(T.idd_v[g], e.iota[p][k]), T.idd_v[dg.V.inv[g]]);
      if (c != e.iota[dg.V.src[g]][action.act_v(g, k)]) rep.add("action", "vertical conjugation differs from the action");
    }
  }
  for (Id x = 0; x < dg.H.arrows(); ++x) {
    const Id p = dg.H.dst[x];
    for (Elem k = 0; k < K[p].order(); ++k) {
      Id c = T.hc(T.hc(T.idd_h[x], e.iota[p][k]), T.idd_h[dg.H.inv[x]]);
      if (c != e.iota[dg.H.src[x]][action.act_h(x, k)]) rep.add("action", "horizontal conjugation differs from the action");
    }
  }
  return rep;
}

AbelianGroupBundle double_kernel(const DoubleGroupoid& dg, const ExtensionPresentation& e) {
  const DoubleGroupoid& T = e.total;
  AbelianGroupBundle out;
  for (Id p = 0; p < dg.points; ++p) {
    std::vector<Id> fiber;
    std::vector<int> pos(T.boxes(), -1);
    for (Id u = 0; u < T.boxes(); ++u)
      if (e.proj[u] == dg.theta(p)) {
        if (!T.in_kernel(u)) throw DomainError("kernel box outside the abelian group bundle");
        pos[u] = static_cast<int>(fiber.size());
        fiber.push_back(u);
      }
    int zero = pos[T.theta(p)];
    if (zero < 0) throw DomainError("projection does not preserve identities");
    auto add = [&](int i, int j) {
      Id c = T.hc(fiber[i], fiber[j]);
      if (c == kNone || pos[c] < 0) throw DomainError("kernel is not closed");
      return pos[c];
    };
    out.fibers.push_back(present_abelian_group(static_cast<int>(fiber.size()), zero, add).group);
  }
  return out;
}

}  // namespace dgc
