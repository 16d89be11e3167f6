#include <algorithm>

#include "dgc/cech.hpp"

namespace dgc {

namespace {

std::size_t cell_index(Nerve& nv, Cell c) {
  long i = nv.level(c.m, c.n).index(c);
  if (i < 0) throw DomainError("not a cell");
  return static_cast<std::size_t>(i);
}

// Cochain value at (member key, cell) or nullopt when the member is absent.
std::optional<Elem> value_at(CechComplex& cx, const Cochain& c, const std::optional<CoverKey>& key, std::size_t cell) {
  if (!key) return std::nullopt;
  long u = cx.cover().member_index(c.r, c.s, *key);
  if (u < 0) return std::nullopt;
  long i = cx.source().item_index(c.r, c.s, static_cast<std::size_t>(u), cell);
  if (i < 0) return std::nullopt;
  return c.values[static_cast<std::size_t>(i)];
}

const CoverKey& chart_key(CechComplex& cx, std::size_t u) { return cx.cover().level(1, 1).members[u].key; }

// Level (1,1) members containing each box, in key order.
std::vector<std::vector<std::size_t>> charts_by_box(CechComplex& cx) {
  const auto& L = cx.cover().level(1, 1);
  std::vector<std::vector<std::size_t>> out(cx.cover().nerve().level(1, 1).size());
  for (std::size_t u = 0; u < L.members.size(); ++u)
    for (auto x : L.members[u].cells) out[x].push_back(u);
  return out;
}

}  // namespace

// The degenerate cell (idd_v l(F), F) composes horizontally to F; its faces are
// F (chart k), F (chart j) and the identity (chart i).
std::optional<Elem> Gluing::psi_h(std::size_t box, std::size_t i, std::size_t k, std::size_t j) {
  const DoubleGroupoid& dg = cx->cover().dg();
  Nerve& nv = cx->cover().nerve();
  const Id F = nv.level(1, 1).cell(box).e[0];
  const Id id = dg.idd_v[dg.l[F]];
  const std::size_t x = cell_index(nv, Cell{1, 2, {id, F}});
  const std::size_t u = cell_index(nv, Cell{1, 2, {id, id}});
  BisimplicialCover& c = cx->cover();
  auto unit = value_at(*cx, tau, c.fill(1, 2, u, Dir::Horizontal, {chart_key(*cx, i), chart_key(*cx, i), chart_key(*cx, i)}), u);
  auto main = value_at(*cx, tau, c.fill(1, 2, x, Dir::Horizontal, {chart_key(*cx, k), chart_key(*cx, j), chart_key(*cx, i)}), x);
  if (!unit || !main) return std::nullopt;
  const FinAbGroup& K = cx->bicomplex().action().bundle.fibers[dg.bl(F)];
  return K.sub(*main, *unit);
}

// (idd_h t(F) / F): faces F (chart k, bottom), F (chart j), identity (chart i, top).
std::optional<Elem> Gluing::psi_v(std::size_t box, std::size_t i, std::size_t k, std::size_t j) {
  const DoubleGroupoid& dg = cx->cover().dg();
  const DoubleAction& act = cx->bicomplex().action();
  Nerve& nv = cx->cover().nerve();
  const Id F = nv.level(1, 1).cell(box).e[0];
  const Id id = dg.idd_h[dg.t[F]];
  const std::size_t x = cell_index(nv, Cell{2, 1, {id, F}});
  const std::size_t u = cell_index(nv, Cell{2, 1, {id, id}});
  BisimplicialCover& c = cx->cover();
  auto unit = value_at(*cx, sigma, c.fill(2, 1, u, Dir::Vertical, {chart_key(*cx, i), chart_key(*cx, i), chart_key(*cx, i)}), u);
  auto main = value_at(*cx, sigma, c.fill(2, 1, x, Dir::Vertical, {chart_key(*cx, k), chart_key(*cx, j), chart_key(*cx, i)}), x);
  if (!unit || !main) return std::nullopt;
  const FinAbGroup& K = act.bundle.fibers[dg.bl(F)];
  return K.sub(*main, act.act_v(dg.V.inv[dg.l[F]], *unit));
}

std::optional<std::size_t> Gluing::unit_chart_h(std::size_t box, std::size_t k, std::size_t j) {
  const DoubleGroupoid& dg = cx->cover().dg();
  Nerve& nv = cx->cover().nerve();
  const Id F = nv.level(1, 1).cell(box).e[0];
  const Id id = dg.idd_v[dg.l[F]];
  const std::size_t ib = cell_index(nv, Cell{1, 1, {id}});
  const std::size_t x = cell_index(nv, Cell{1, 2, {id, F}});
  const auto& L = cx->cover().level(1, 1);
  for (std::size_t i = 0; i < L.members.size(); ++i)
    if (cx->cover().contains(1, 1, i, ib) &&
        cx->cover().fill(1, 2, x, Dir::Horizontal, {chart_key(*cx, k), chart_key(*cx, j), L.members[i].key}))
      return i;
  return std::nullopt;
}

std::optional<std::size_t> Gluing::unit_chart_v(std::size_t box, std::size_t k, std::size_t j) {
  const DoubleGroupoid& dg = cx->cover().dg();
  Nerve& nv = cx->cover().nerve();
  const Id F = nv.level(1, 1).cell(box).e[0];
  const Id id = dg.idd_h[dg.t[F]];
  const std::size_t ib = cell_index(nv, Cell{1, 1, {id}});
  const std::size_t x = cell_index(nv, Cell{2, 1, {id, F}});
  const auto& L = cx->cover().level(1, 1);
  for (std::size_t i = 0; i < L.members.size(); ++i)
    if (cx->cover().contains(1, 1, i, ib) &&
        cx->cover().fill(2, 1, x, Dir::Vertical, {chart_key(*cx, k), chart_key(*cx, j), L.members[i].key}))
      return i;
  return std::nullopt;
}

ExtensionPresentation glue_extension(CechComplex& cx, const Cochain& sigma, const Cochain& tau) {
  BisimplicialCover& cov = cx.cover();
  const DoubleGroupoid& dg = cov.dg();
  const DoubleAction& act = cx.bicomplex().action();
  const auto& K = act.bundle.fibers;
  Nerve& nv = cov.nerve();
  Gluing g{&cx, sigma, tau};
  const auto charts = charts_by_box(cx);

  const Id nb = dg.boxes();
  std::vector<std::size_t> cell_of(nb), home(nb);
  std::vector<Id> offset(nb + 1, 0);
  for (Id F = 0; F < nb; ++F) {
    cell_of[F] = cell_index(nv, Cell{1, 1, {F}});
    long u = cov.member_index(1, 1, cov.canonical(1, 1, cell_of[F]));
    if (u < 0) throw DomainError("canonical chart missing");
    home[F] = static_cast<std::size_t>(u);
    offset[F + 1] = offset[F] + static_cast<Id>(K[dg.bl(F)].order());
  }

  // [k, F, chart] -> k + psi_{chart -> home}(F), through psi^h or psi^v.
  auto to_home = [&](Elem k, Id F, std::size_t chart) -> Elem {
    if (chart == home[F]) return k;
    const std::size_t x = cell_of[F];
    if (auto i = g.unit_chart_h(x, chart, home[F]))
      if (auto p = g.psi_h(x, *i, chart, home[F])) return K[dg.bl(F)].add(k, *p);
    if (auto i = g.unit_chart_v(x, chart, home[F]))
      if (auto p = g.psi_v(x, *i, chart, home[F])) return K[dg.bl(F)].add(k, *p);
    throw DomainError("charts of a box are not related by the gluing relations");
  };

  auto hc = [&](Id a, Id c) -> Id {
    const Id F = static_cast<Id>(std::upper_bound(offset.begin(), offset.end(), a) - offset.begin() - 1);
    const Id G = static_cast<Id>(std::upper_bound(offset.begin(), offset.end(), c) - offset.begin() - 1);
    const Elem k = a - offset[F], l = c - offset[G];
    const Id FG = dg.hc(F, G);
    const std::size_t x = cell_index(nv, Cell{1, 2, {F, G}});
    for (std::size_t ch : charts[cell_of[FG]]) {
      auto lam = cov.fill(1, 2, x, Dir::Horizontal,
                          {chart_key(cx, home[G]), chart_key(cx, ch), chart_key(cx, home[F])});
      auto t = value_at(cx, tau, lam, x);
      if (!t) continue;
      const FinAbGroup& KF = K[dg.bl(F)];
      Elem v = KF.add(KF.add(k, act.act_h(dg.b[F], l)), *t);
      return offset[FG] + static_cast<Id>(to_home(v, FG, ch));
    }
    throw DomainError("no chart for a horizontal composite");
  };

  auto vc = [&](Id a, Id c) -> Id {
    const Id F = static_cast<Id>(std::upper_bound(offset.begin(), offset.end(), a) - offset.begin() - 1);
    const Id G = static_cast<Id>(std::upper_bound(offset.begin(), offset.end(), c) - offset.begin() - 1);
    const Elem k = a - offset[F], l = c - offset[G];
    const Id FG = dg.vc(F, G);
    const std::size_t x = cell_index(nv, Cell{2, 1, {F, G}});
    for (std::size_t ch : charts[cell_of[FG]]) {
      auto lam = cov.fill(2, 1, x, Dir::Vertical,
                          {chart_key(cx, home[G]), chart_key(cx, ch), chart_key(cx, home[F])});
      auto s = value_at(cx, sigma, lam, x);
      if (!s) continue;
      const FinAbGroup& KG = K[dg.bl(G)];
      Elem v = KG.add(KG.add(act.act_v(dg.V.inv[dg.l[G]], k), l), *s);
      return offset[FG] + static_cast<Id>(to_home(v, FG, ch));
    }
    throw DomainError("no chart for a vertical composite");
  };

  std::vector<Id> t, b, l, r, proj;
  for (Id F = 0; F < nb; ++F)
    for (Id k = offset[F]; k < offset[F + 1]; ++k) {
      t.push_back(dg.t[F]);
      b.push_back(dg.b[F]);
      l.push_back(dg.l[F]);
      r.push_back(dg.r[F]);
      proj.push_back(F);
    }
  ExtensionPresentation e;
  e.total = make_double_groupoid(dg.name + "#glued", dg.points, dg.V, dg.H, t, b, l, r, hc, vc);
  e.proj = std::move(proj);
  e.iota.resize(dg.points);
  for (Id p = 0; p < dg.points; ++p) {
    const Id th = dg.theta(p);
    const Id unit = e.total.theta(p);
    if (unit < offset[th] || unit >= offset[th + 1]) throw DomainError("glued identity is not over Theta");
    const Elem zero = unit - offset[th];
    for (Elem k = 0; k < K[p].order(); ++k) e.iota[p].push_back(offset[th] + static_cast<Id>(K[p].add(k, zero)));
  }
  return e;
}

}  // namespace dgc
