#include "dgc/extensions.hpp"

namespace dgc {

Id kshift(const DoubleGroupoid& dg, const ExtensionPresentation& e, Elem k, Id base) {
  const DoubleGroupoid& T = e.total;
  Id p = dg.bl(e.proj[base]);
  Id w = T.hc(e.iota[p][k], T.idd_h[T.b[base]]);
  if (w == kNone) throw DomainError("kernel element does not fit under the box");
  return T.vc(base, w);
}

Elem fiber_difference(const DoubleGroupoid& dg, const ExtensionPresentation& e, Id base, Id target) {
  if (e.proj[base] != e.proj[target]) throw DomainError("boxes lie over different boxes of the base");
  Id p = dg.bl(e.proj[base]);
  for (Elem k = 0; k < static_cast<Elem>(e.iota[p].size()); ++k)
    if (kshift(dg, e, k, base) == target) return k;
  throw DomainError("kernel does not act transitively on a fiber");
}

std::vector<Id> default_section(const DoubleGroupoid& dg, const ExtensionPresentation& e) {
  std::vector<Id> s(dg.boxes(), kNone);
  for (Id u = 0; u < static_cast<Id>(e.proj.size()); ++u)
    if (s[e.proj[u]] == kNone) s[e.proj[u]] = u;
  for (Id f : s)
    if (f == kNone) throw DomainError("projection is not surjective");
  return s;
}

TotalCocycle raw_cocycle(const DoubleGroupoid& dg, const ExtensionPresentation& e, const std::vector<Id>& s) {
  Level l21 = enumerate_level(dg, 2, 1);
  Level l12 = enumerate_level(dg, 1, 2);
  const DoubleGroupoid& T = e.total;
  for (Id f = 0; f < dg.boxes(); ++f)
    if (e.proj[s[f]] != f) throw DomainError("not a section");
  TotalCocycle z;
  for (std::size_t i = 0; i < l21.size(); ++i) {
    const Id* c = l21.entries(i);
    z.sigma.push_back(fiber_difference(dg, e, s[dg.vc(c[0], c[1])], T.vc(s[c[0]], s[c[1]])));
  }
  for (std::size_t i = 0; i < l12.size(); ++i) {
    const Id* c = l12.entries(i);
    z.tau.push_back(fiber_difference(dg, e, s[dg.hc(c[0], c[1])], T.hc(s[c[0]], s[c[1]])));
  }
  return z;
}

TotalCocycle cocycle_from_extension(const DoubleGroupoid& dg, const DoubleAction& action, const ExtensionPresentation& e,
                                    const std::optional<std::vector<Id>>& section) {
  std::vector<Id> s = section ? *section : default_section(dg, e);
  return normalize_cocycle(dg, action, raw_cocycle(dg, e, s));
}

}  // namespace dgc
