#include <algorithm>
#include <bit>

#include "dgc/cech.hpp"

namespace dgc {

bool ExtGroupReport::ok() const {
  for (const auto& c : covers)
    if (!c.agree || !c.gluing_ok) return false;
  for (const auto& t : transitions)
    if (!t.chain_map || !t.commutes) return false;
  return !covers.empty();
}

namespace {

Cover points_cover(const RawCover& raw, Nerve& nv) {
  Cover c{nv.dg().points, {}};
  for (const auto& s : raw_level_sets(raw, nv, 0, 0)) {
    std::vector<Id> ids;
    // Level (0,0) cells are the points in order.
    for (auto x : s) ids.push_back(nv.level(0, 0).cell(x).e[0]);
    c.sets.push_back(std::move(ids));
  }
  return normalize_cover(std::move(c));
}

// theta[j] = least coarse set containing fine set j, per level.
std::vector<Id> level_theta(const std::vector<std::vector<std::size_t>>& coarse,
                            const std::vector<std::vector<std::size_t>>& fine) {
  std::vector<Id> theta;
  for (const auto& f : fine) {
    Id found = kNone;
    for (std::size_t i = 0; i < coarse.size() && found == kNone; ++i)
      if (std::includes(coarse[i].begin(), coarse[i].end(), f.begin(), f.end())) found = static_cast<Id>(i);
    if (found == kNone) throw DomainError("cover family is not directed under refinement");
    theta.push_back(found);
  }
  return theta;
}

Elem glued_class(CechComplex& cx, CohomologyContext& ctx, const Vec& x, bool* valid) {
  auto [s, t] = cx.degree_one_cochains(x);
  ExtensionPresentation e = glue_extension(cx, s, t);
  *valid = validate_extension(ctx.dg(), ctx.action(), e).ok();
  if (!*valid) return -1;
  return ctx.classify(cocycle_from_extension(ctx.dg(), ctx.action(), e));
}

}  // namespace

ExtGroupReport ext_group(const DoubleGroupoid& dg, const DoubleAction& action, const std::vector<RawCover>& family,
                         std::size_t cap) {
  ExtGroupReport rep;
  if (family.empty()) throw DomainError("empty cover family");
  CohomologyContext ctx(dg, action, Normalization::Degenerate, cap);
  std::vector<std::unique_ptr<BisimplicialCover>> covers;
  std::vector<std::unique_ptr<CechComplex>> cxs;

  for (std::size_t a = 0; a < family.size(); ++a) {
    covers.push_back(bisimplicial_refinement(dg, family[a], cap));
    cxs.push_back(std::make_unique<CechComplex>(*covers.back(), action));
    CechComplex& cx = *cxs.back();
    CoverReport cr;
    cr.label = "cover " + std::to_string(a);
    cr.cech_h1 = cx.h1().group;

    Cover pts = points_cover(family[a], covers.back()->nerve());
    CechDoubleGroupoid cdg = cech_double_groupoid(dg, pts);
    DoubleAction pa = pullback_action(cdg, action);
    CohomologyContext local(cdg.dg, pa, Normalization::Degenerate, cap);
    cr.opext = local.h1().group;
    for (const auto& ce : classify_extensions(local))
      if (ce.valid) ++cr.classes;
    cr.agree = cr.opext == cr.cech_h1 && static_cast<std::int64_t>(cr.classes) == cr.opext.order();

    cr.gluing_ok = true;
    for (Elem c = 0; c < cr.cech_h1.order(); ++c) {
      Vec x = cx.h1().representative_elem(c);
      bool valid = false;
      Elem g = glued_class(cx, ctx, x, &valid);
      if (!valid || g != discrete_class(cx, ctx, x)) cr.gluing_ok = false;
    }
    rep.covers.push_back(std::move(cr));
  }

  for (std::size_t a = 0; a + 1 < family.size(); ++a) {
    TransitionReport tr;
    tr.from = a;
    tr.to = a + 1;
    CechComplex& coarse = *cxs[a];
    CechComplex& fine = *cxs[a + 1];
    std::map<std::pair<int, int>, std::vector<Id>> thetas;
    auto theta_at = [&](int k, int l) -> const std::vector<Id>& {
      auto key = std::make_pair(k, l);
      auto it = thetas.find(key);
      if (it != thetas.end()) return it->second;
      Nerve& nv = covers[a]->nerve();
      auto th = level_theta(raw_level_sets(family[a], nv, k, l), raw_level_sets(family[a + 1], nv, k, l));
      return thetas.emplace(key, std::move(th)).first->second;
    };
    // Entrywise on Lambda keys: entry p sits at the level of its pair.
    MemberMap theta = [&](int m, int n, const CoverKey& key) {
      auto P = lexy_pairs(m, n);
      CoverKey out(key.size());
      for (std::size_t p = 0; p < P.size(); ++p)
        out[p] = theta_at(std::popcount(P[p].first) - 1, std::popcount(P[p].second) - 1)[key[p]];
      return out;
    };
    CechRestriction r = cech_restriction(coarse, fine, theta);
    tr.chain_map = r.chain_map;
    tr.cech_map = induced_h1(coarse, fine, r);
    tr.commutes = tr.chain_map;
    const Homology& ha = coarse.h1();
    for (Elem c = 0; c < ha.group.order() && tr.commutes; ++c) {
      Vec x = ha.representative_elem(c);
      Vec y = apply(r.tot1, x, fine.total(1).cx.groups[1]);
      bool v1 = false, v2 = false;
      Elem g1 = glued_class(coarse, ctx, x, &v1);
      Elem g2 = glued_class(fine, ctx, y, &v2);
      if (!v1 || !v2 || g1 != g2) tr.commutes = false;
    }
    rep.transitions.push_back(std::move(tr));
  }
  rep.ext = rep.covers.back().opext;
  return rep;
}

}  // namespace dgc
