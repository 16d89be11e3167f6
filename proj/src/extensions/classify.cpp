#include "dgc/extensions.hpp"

namespace dgc {

bool extensions_equivalent(CohomologyContext& ctx, const ExtensionPresentation& a, const ExtensionPresentation& b) {
  const DoubleGroupoid& dg = ctx.dg();
  if (a.proj.size() != b.proj.size() || a.iota.size() != b.iota.size()) throw DomainError("extensions of different data");
  for (std::size_t p = 0; p < a.iota.size(); ++p)
    if (a.iota[p].size() != b.iota[p].size()) throw DomainError("extensions by different bundles");
  TotalCocycle za = cocycle_from_extension(dg, ctx.action(), a);
  TotalCocycle zb = cocycle_from_extension(dg, ctx.action(), b);
  return ctx.classify(za) == ctx.classify(zb);
}

bool extensions_isomorphic(CohomologyContext& ctx, const ExtensionPresentation& a, const ExtensionPresentation& b,
                           const std::vector<Id>& psi, const std::vector<std::vector<Elem>>& phi) {
  const DoubleGroupoid& dg = ctx.dg();
  const DoubleAction& act = ctx.action();
  const auto& K = act.bundle.fibers;
  if (static_cast<int>(psi.size()) != dg.boxes()) throw DomainError("psi has the wrong size");
  std::vector<bool> seen(dg.boxes(), false);
  for (Id f = 0; f < dg.boxes(); ++f) {
    Id g = psi[f];
    if (g < 0 || g >= dg.boxes() || seen[g]) throw DomainError("psi is not a bijection");
    seen[g] = true;
    if (dg.t[g] != dg.t[f] || dg.b[g] != dg.b[f] || dg.l[g] != dg.l[f] || dg.r[g] != dg.r[f])
      throw DomainError("psi moves sides");
    for (Id h : dg.hcomp.right_of(f))
      if (psi[dg.hc(f, h)] != dg.hc(g, psi[h])) throw DomainError("psi is not a morphism");
    for (Id h : dg.vcomp.right_of(f))
      if (psi[dg.vc(f, h)] != dg.vc(g, psi[h])) throw DomainError("psi is not a morphism");
  }
  for (Id p = 0; p < dg.points; ++p)
    for (Elem k = 0; k < K[p].order(); ++k)
      for (Elem m = 0; m < K[p].order(); ++m)
        if (phi[p][K[p].add(k, m)] != K[p].add(phi[p][k], phi[p][m])) throw DomainError("phi is not additive");
  for (Id g = 0; g < dg.V.arrows(); ++g)
    for (Elem k = 0; k < K[dg.V.dst[g]].order(); ++k)
      if (act.act_v(g, phi[dg.V.dst[g]][k]) != phi[dg.V.src[g]][act.act_v(g, k)]) throw DomainError("phi breaks the action");
  for (Id x = 0; x < dg.H.arrows(); ++x)
    for (Elem k = 0; k < K[dg.H.dst[x]].order(); ++k)
      if (act.act_h(x, phi[dg.H.dst[x]][k]) != phi[dg.H.src[x]][act.act_h(x, k)]) throw DomainError("phi breaks the action");

  TotalCocycle za = cocycle_from_extension(dg, act, a);
  TotalCocycle zb = cocycle_from_extension(dg, act, b);
  const Level& l21 = ctx.level(2, 1);
  const Level& l12 = ctx.level(1, 2);
  TotalCocycle lhs = za, rhs = zb;
  for (std::size_t i = 0; i < l21.size(); ++i) {
    const Id* c = l21.entries(i);
    lhs.sigma[i] = phi[dg.bl(c[1])][za.sigma[i]];
    rhs.sigma[i] = zb.sigma[l21.index({2, 1, {psi[c[0]], psi[c[1]]}})];
  }
  for (std::size_t i = 0; i < l12.size(); ++i) {
    const Id* c = l12.entries(i);
    lhs.tau[i] = phi[dg.bl(c[0])][za.tau[i]];
    rhs.tau[i] = zb.tau[l12.index({1, 2, {psi[c[0]], psi[c[1]]}})];
  }
  return ctx.classify(lhs) == ctx.classify(rhs);
}

std::vector<ClassifiedExtension> classify_extensions(CohomologyContext& ctx) {
  std::vector<ClassifiedExtension> out;
  const FinAbGroup& g = ctx.h1().group;
  for (Elem c = 0; c < g.order(); ++c) {
    ClassifiedExtension ce;
    ce.cls = c;
    ce.coords = g.decode(c);
    ce.cocycle = ctx.representative(c);
    ce.ext = smash_product(ctx.dg(), ctx.action(), ce.cocycle);
    ce.valid = validate_extension(ctx.dg(), ctx.action(), ce.ext).ok();
    out.push_back(std::move(ce));
  }
  return out;
}

}  // namespace dgc
