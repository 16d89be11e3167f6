#include "dgc/cohomology.hpp"

namespace dgc {

CohomologyContext::CohomologyContext(const DoubleGroupoid& dg, const DoubleAction& action, Normalization norm,
                                     std::size_t cap)
    : dg_(dg), act_(action) {
  src_ = std::make_unique<NerveSource>(dg, norm, cap);
  bc_ = std::make_unique<Bicomplex>(*src_, action);
  tot_ = total_complex(*bc_, 1);
}

const Homology& CohomologyContext::h0() {
  if (!h0_) h0_ = homology(tot_.cx, 0);
  return *h0_;
}

const Homology& CohomologyContext::h1() {
  if (!h1_) h1_ = homology(tot_.cx, 1);
  return *h1_;
}

Vec CohomologyContext::coords(const TotalCocycle& z) {
  Vec x(tot_.cx.groups[1].size(), 0);
  const Block* bs = tot_.find(1, 2, 1);
  const Block* bt = tot_.find(1, 1, 2);
  Vec xs = bc_->to_coords({2, 1, z.sigma});
  Vec xt = bc_->to_coords({1, 2, z.tau});
  std::copy(xs.begin(), xs.end(), x.begin() + bs->offset);
  std::copy(xt.begin(), xt.end(), x.begin() + bt->offset);
  return x;
}

TotalCocycle CohomologyContext::cocycle(const Vec& x) {
  const Block* bs = tot_.find(1, 2, 1);
  const Block* bt = tot_.find(1, 1, 2);
  Vec xs(x.begin() + bs->offset, x.begin() + bt->offset);
  Vec xt(x.begin() + bt->offset, x.end());
  return {bc_->from_coords(2, 1, xs).values, bc_->from_coords(1, 2, xt).values};
}

bool CohomologyContext::closed(const TotalCocycle& z) {
  return is_zero(apply(tot_.cx.d[1], coords(z), tot_.cx.groups[2]));
}

bool CohomologyContext::normalized(const TotalCocycle& z) {
  const CochainSpace& s = bc_->space(2, 1);
  const CochainSpace& t = bc_->space(1, 2);
  for (std::size_t i = 0; i < s.items(); ++i)
    if (s.offset[i] < 0 && z.sigma[i] != 0) return false;
  for (std::size_t i = 0; i < t.items(); ++i)
    if (t.offset[i] < 0 && z.tau[i] != 0) return false;
  return true;
}

TotalCocycle CohomologyContext::coboundary(const Vec& mu) {
  return cocycle(apply(tot_.cx.d[0], mu, tot_.cx.groups[1]));
}

TotalCocycle normalize_cocycle(const DoubleGroupoid& dg, const DoubleAction& action, const TotalCocycle& z,
                               Vec* mu_out) {
  CohomologyContext ctx(dg, action, Normalization::None);
  if (!ctx.closed(z)) throw DomainError("cocycle is not closed");
  const Level& l11 = ctx.level(1, 1);
  const Level& l21 = ctx.level(2, 1);
  const Level& l12 = ctx.level(1, 2);
  std::vector<Elem> mu(l11.size(), 0);
  std::vector<bool> set(l11.size(), false);
  for (Id x = 0; x < dg.H.arrows(); ++x) {
    Id a = dg.idd_h[x];
    long i = l11.index({1, 1, {a}});
    mu[i] = z.sigma[l21.index({2, 1, {a, a}})];
    set[i] = true;
  }
  for (Id g = 0; g < dg.V.arrows(); ++g) {
    Id a = dg.idd_v[g];
    long i = l11.index({1, 1, {a}});
    if (set[i]) continue;  // Theta: keep the sigma value
    mu[i] = z.tau[l12.index({1, 2, {a, a}})];
  }
  Bicomplex& bc = ctx.bicomplex();
  Vec m = bc.to_coords({1, 1, mu});
  auto subtract = [&](const Vec& mv) {
    Vec dz = apply(ctx.total().cx.d[0], mv, ctx.total().cx.groups[1]);
    Vec zc = ctx.coords(z);
    const Moduli& mod = ctx.total().cx.groups[1];
    for (std::size_t k = 0; k < zc.size(); ++k) zc[k] = ((zc[k] - dz[k]) % mod[k] + mod[k]) % mod[k];
    return ctx.cocycle(zc);
  };
  TotalCocycle out = subtract(m);

  auto is_normal = [&](const TotalCocycle& w) {
    for (std::size_t i = 0; i < l21.size(); ++i)
      if (w.sigma[i] != 0 && is_degenerate(dg, l21.cell(i))) return false;
    for (std::size_t i = 0; i < l12.size(); ++i)
      if (w.tau[i] != 0 && is_degenerate(dg, l12.cell(i))) return false;
    return true;
  };
  if (!is_normal(out)) {
    // Solve for mu directly: d0 mu must agree with z on degenerate cells.
    const TotalComplex& T = ctx.total();
    const Block* bs = T.find(1, 2, 1);
    const Block* bt = T.find(1, 1, 2);
    const CochainSpace& s = bc.space(2, 1);
    const CochainSpace& t = bc.space(1, 2);
    std::vector<int> rows;
    for (std::size_t i = 0; i < s.items(); ++i)
      if (is_degenerate(dg, l21.cell(i)))
        for (std::size_t a = 0; a < action.bundle.fibers[s.base[i]].factors.size(); ++a)
          rows.push_back(static_cast<int>(bs->offset + s.offset[i] + a));
    for (std::size_t i = 0; i < t.items(); ++i)
      if (is_degenerate(dg, l12.cell(i)))
        for (std::size_t a = 0; a < action.bundle.fibers[t.base[i]].factors.size(); ++a)
          rows.push_back(static_cast<int>(bt->offset + t.offset[i] + a));
    SparseMatrix P(static_cast<int>(rows.size()), static_cast<int>(T.cx.groups[0].size()));
    Moduli pm;
    Vec rhs;
    Vec zc = ctx.coords(z);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (auto [j, v] : T.cx.d[0].row(rows[k])) P.add(static_cast<int>(k), j, v);
      pm.push_back(T.cx.groups[1][rows[k]]);
      rhs.push_back(zc[rows[k]]);
    }
    P.finalize(pm);
    auto sol = solve(P, T.cx.groups[0], pm, rhs);
    if (!sol) throw DomainError("no normalizing coboundary exists");
    m = *sol;
    out = subtract(m);
    if (!is_normal(out)) throw DomainError("normalization failed");
  }
  if (mu_out) *mu_out = m;
  return out;
}

}  // namespace dgc
