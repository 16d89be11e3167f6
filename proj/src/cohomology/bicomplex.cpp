#include "dgc/cohomology.hpp"

namespace dgc {

long NerveSource::face_index(int m, int n, std::size_t i, Dir dir, int k) {
  Cell c = nerve_.level(m, n).cell(i);
  Cell f = face(nerve_.dg(), c, dir, k);
  long idx = nerve_.level(f.m, f.n).index(f);
  if (idx < 0) throw DomainError("face is not a cell");
  return idx;
}

bool NerveSource::pinned(int m, int n, std::size_t i) {
  if (norm_ == Normalization::None) return false;
  return is_degenerate(nerve_.dg(), nerve_.level(m, n).cell(i));
}

Bicomplex::Bicomplex(CellSource& src, const DoubleAction& action) : src_(src), act_(action) {
  if (action.bundle.points() != src.dg().points) throw DomainError("bundle does not match the points");
}

const CochainSpace& Bicomplex::space(int r, int s) {
  auto key = std::make_pair(r, s);
  auto it = spaces_.find(key);
  if (it != spaces_.end()) return it->second;
  CochainSpace sp;
  sp.r = r;
  sp.s = s;
  const std::size_t n = src_.count(r, s);
  sp.offset.assign(n, -1);
  sp.base.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sp.base[i] = basepoint(src_.dg(), src_.cell(r, s, i));
    if (src_.pinned(r, s, i)) continue;
    sp.offset[i] = static_cast<long>(sp.moduli.size());
    for (auto d : act_.bundle.fibers[sp.base[i]].factors) {
      sp.moduli.push_back(d);
      sp.owner.push_back(i);
    }
  }
  return spaces_.emplace(key, std::move(sp)).first->second;
}

const std::vector<std::vector<std::int64_t>>& Bicomplex::twist(Dir dir, Id arrow) {
  auto key = std::make_pair(dir == Dir::Vertical ? 0 : 1, arrow);
  auto it = twists_.find(key);
  if (it != twists_.end()) return it->second;
  const DoubleGroupoid& dg = src_.dg();
  const auto& F = act_.bundle.fibers;
  std::vector<std::vector<std::int64_t>> m;
  if (dir == Dir::Vertical)
    m = matrix_from_table(F[dg.V.dst[arrow]], F[dg.V.src[arrow]], act_.v[arrow]);
  else
    m = matrix_from_table(F[dg.H.dst[arrow]], F[dg.H.src[arrow]], act_.h[arrow]);
  return twists_.emplace(key, std::move(m)).first->second;
}

// Alternating sum of faces; only the face dropping the basepoint is twisted:
// the last vertical face by the inverse of the last left edge, the first
// horizontal face by the first bottom edge.
SparseMatrix Bicomplex::build(int r, int s, Dir dir) {
  const int tr = dir == Dir::Vertical ? r + 1 : r;
  const int ts = dir == Dir::Vertical ? s : s + 1;
  const CochainSpace& S = space(r, s);
  const CochainSpace& T = space(tr, ts);
  const DoubleGroupoid& dg = src_.dg();
  SparseMatrix d(static_cast<int>(T.dim()), static_cast<int>(S.dim()));
  const int faces = (dir == Dir::Vertical ? tr : ts) + 1;
  for (std::size_t i = 0; i < T.items(); ++i) {
    if (T.offset[i] < 0) continue;
    const int rows = static_cast<int>(act_.bundle.fibers[T.base[i]].factors.size());
    if (rows == 0) continue;
    Cell c = src_.cell(tr, ts, i);
    for (int k = 0; k < faces; ++k) {
      long f = src_.face_index(tr, ts, i, dir, k);
      if (S.offset[f] < 0) continue;
      const std::int64_t sign = k % 2 ? -1 : 1;
      const bool twisted = dir == Dir::Vertical ? k == tr : k == 0;
      if (!twisted) {
        if (S.base[f] != T.base[i]) throw DomainError("fiber mismatch between a cell and its face");
        for (int a = 0; a < rows; ++a) d.add(static_cast<int>(T.offset[i] + a), static_cast<int>(S.offset[f] + a), sign);
        continue;
      }
      Id arrow = dir == Dir::Vertical ? dg.V.inv[grid_vedge(dg, c, tr - 1, 0)] : grid_hedge(dg, c, tr, 0);
      const auto& m = twist(dir, arrow);
      for (int a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < m[a].size(); ++b)
          d.add(static_cast<int>(T.offset[i] + a), static_cast<int>(S.offset[f] + b), sign * m[a][b]);
    }
  }
  d.finalize(T.moduli);
  return d;
}

const SparseMatrix& Bicomplex::d_h(int r, int s) {
  auto key = std::make_pair(r, s);
  auto it = dh_.find(key);
  if (it != dh_.end()) return it->second;
  return dh_.emplace(key, build(r, s, Dir::Horizontal)).first->second;
}

const SparseMatrix& Bicomplex::d_v(int r, int s) {
  auto key = std::make_pair(r, s);
  auto it = dv_.find(key);
  if (it != dv_.end()) return it->second;
  return dv_.emplace(key, build(r, s, Dir::Vertical)).first->second;
}

Vec Bicomplex::to_coords(const Cochain& c) {
  const CochainSpace& sp = space(c.r, c.s);
  Vec x(sp.dim(), 0);
  for (std::size_t i = 0; i < sp.items(); ++i) {
    if (sp.offset[i] < 0) continue;
    auto cs = act_.bundle.fibers[sp.base[i]].decode(c.values[i]);
    for (std::size_t a = 0; a < cs.size(); ++a) x[sp.offset[i] + a] = cs[a];
  }
  return x;
}

Cochain Bicomplex::from_coords(int r, int s, const Vec& x) {
  const CochainSpace& sp = space(r, s);
  Cochain c{r, s, std::vector<Elem>(sp.items(), 0)};
  for (std::size_t i = 0; i < sp.items(); ++i) {
    if (sp.offset[i] < 0) continue;
    const FinAbGroup& F = act_.bundle.fibers[sp.base[i]];
    std::vector<std::int64_t> cs(x.begin() + sp.offset[i], x.begin() + sp.offset[i] + F.rank());
    c.values[i] = F.encode(cs);
  }
  return c;
}

Cochain coboundary_h(Bicomplex& bc, const Cochain& a) {
  Vec y = apply(bc.d_h(a.r, a.s), bc.to_coords(a), bc.space(a.r, a.s + 1).moduli);
  return bc.from_coords(a.r, a.s + 1, y);
}

Cochain coboundary_v(Bicomplex& bc, const Cochain& a) {
  Vec y = apply(bc.d_v(a.r, a.s), bc.to_coords(a), bc.space(a.r + 1, a.s).moduli);
  return bc.from_coords(a.r + 1, a.s, y);
}

CochainSpace cochain_group(const DoubleGroupoid& dg, const DoubleAction& action, int r, int s, std::size_t cap) {
  NerveSource src(dg, Normalization::Degenerate, cap);
  Bicomplex bc(src, action);
  return bc.space(r, s);
}

}  // namespace dgc
