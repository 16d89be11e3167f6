#include <algorithm>

#include "dgc/cech.hpp"

namespace dgc {

const CechSource::Items& CechSource::items(int m, int n) {
  auto key = std::make_pair(m, n);
  auto it = items_.find(key);
  if (it != items_.end()) return it->second;
  Items out;
  const auto& L = cover_.level(m, n);
  for (std::size_t u = 0; u < L.members.size(); ++u) {
    out.start.push_back(out.list.size());
    for (auto x : L.members[u].cells) out.list.emplace_back(u, x);
  }
  out.start.push_back(out.list.size());
  return items_.emplace(key, std::move(out)).first->second;
}

std::size_t CechSource::count(int m, int n) { return items(m, n).list.size(); }

Cell CechSource::cell(int m, int n, std::size_t i) {
  return cover_.nerve().level(m, n).cell(items(m, n).list[i].second);
}

std::pair<std::size_t, std::size_t> CechSource::item(int m, int n, std::size_t i) { return items(m, n).list[i]; }

long CechSource::item_index(int m, int n, std::size_t member, std::size_t cell) {
  const Items& I = items(m, n);
  const auto& cells = cover_.level(m, n).members[member].cells;
  auto it = std::lower_bound(cells.begin(), cells.end(), cell);
  if (it == cells.end() || *it != cell) return -1;
  return static_cast<long>(I.start[member] + (it - cells.begin()));
}

long CechSource::face_index(int m, int n, std::size_t i, Dir dir, int k) {
  auto [u, x] = items(m, n).list[i];
  const int fm = dir == Dir::Vertical ? m - 1 : m;
  const int fn = dir == Dir::Vertical ? n : n - 1;
  CoverKey fk = cover_.face(m, n, cover_.level(m, n).members[u].key, dir, k);
  long fu = cover_.member_index(fm, fn, fk);
  Cell f = face(dg(), cover_.nerve().level(m, n).cell(x), dir, k);
  long fx = cover_.nerve().level(fm, fn).index(f);
  if (fu < 0 || fx < 0) throw DomainError("cover is not bisimplicial");
  long idx = item_index(fm, fn, static_cast<std::size_t>(fu), static_cast<std::size_t>(fx));
  if (idx < 0) throw DomainError("cover is not bisimplicial: face leaves the face member");
  return idx;
}

CechComplex::CechComplex(BisimplicialCover& cover, const DoubleAction& action) : src_(cover), bc_(src_, action) {}

const TotalComplex& CechComplex::total(int nmax) {
  auto it = tot_.find(nmax);
  if (it != tot_.end()) return it->second;
  return tot_.emplace(nmax, total_complex(bc_, nmax)).first->second;
}

const Homology& CechComplex::h1() {
  if (!h1_) h1_ = std::make_unique<Homology>(homology(total(1).cx, 1));
  return *h1_;
}

Vec CechComplex::degree_one_coords(const Cochain& sigma, const Cochain& tau) {
  const TotalComplex& t = total(1);
  Vec x(t.cx.groups[1].size(), 0);
  auto put = [&](const Cochain& c) {
    const Block* b = t.find(1, c.r, c.s);
    Vec y = bc_.to_coords(c);
    std::copy(y.begin(), y.end(), x.begin() + static_cast<long>(b->offset));
  };
  put(sigma);
  put(tau);
  return x;
}

std::pair<Cochain, Cochain> CechComplex::degree_one_cochains(const Vec& x) {
  const TotalComplex& t = total(1);
  auto get = [&](int r, int s) {
    const Block* b = t.find(1, r, s);
    const std::size_t len = bc_.space(r, s).dim();
    Vec y(x.begin() + static_cast<long>(b->offset), x.begin() + static_cast<long>(b->offset + len));
    return bc_.from_coords(r, s, y);
  };
  return {get(2, 1), get(1, 2)};
}

FinAbGroup cech_h1_total(const DoubleGroupoid&, const DoubleAction& action, BisimplicialCover& cover) {
  CechComplex cx(cover, action);
  return cx.h1().group;
}

TotalCocycle restrict_to_cells(CechComplex& cx, const Cochain& sigma, const Cochain& tau) {
  BisimplicialCover& cov = cx.cover();
  auto pull = [&](const Cochain& c) {
    const std::size_t N = cov.nerve().level(c.r, c.s).size();
    std::vector<Elem> out(N);
    for (std::size_t x = 0; x < N; ++x) {
      long u = cov.member_index(c.r, c.s, cov.canonical(c.r, c.s, x));
      long i = u < 0 ? -1 : cx.source().item_index(c.r, c.s, static_cast<std::size_t>(u), x);
      if (i < 0) throw DomainError("canonical member does not contain its cell");
      out[x] = c.values[static_cast<std::size_t>(i)];
    }
    return out;
  };
  return {pull(sigma), pull(tau)};
}

Elem discrete_class(CechComplex& cx, CohomologyContext& ctx, const Vec& x) {
  auto [s, t] = cx.degree_one_cochains(x);
  TotalCocycle z = restrict_to_cells(cx, s, t);
  return ctx.classify(normalize_cocycle(ctx.dg(), ctx.action(), z));
}

CechRestriction cech_restriction(CechComplex& coarse, CechComplex& fine, const MemberMap& theta, int max_total) {
  CechRestriction out;
  Bicomplex& A = coarse.bicomplex();
  Bicomplex& B = fine.bicomplex();
  auto level_map = [&](int m, int n) -> const SparseMatrix& {
    auto key = std::make_pair(m, n);
    auto it = out.maps.find(key);
    if (it != out.maps.end()) return it->second;
    const CochainSpace& SA = A.space(m, n);
    const CochainSpace& SB = B.space(m, n);
    SparseMatrix R(static_cast<int>(SB.dim()), static_cast<int>(SA.dim()));
    const auto& fineL = fine.cover().level(m, n);
    for (std::size_t i = 0; i < SB.items(); ++i) {
      auto [u, x] = fine.source().item(m, n, i);
      CoverKey ck = theta(m, n, fineL.members[u].key);
      long cu = coarse.cover().member_index(m, n, ck);
      long ci = cu < 0 ? -1 : coarse.source().item_index(m, n, static_cast<std::size_t>(cu), x);
      if (ci < 0) {
        out.problems.push_back("member map leaves the coarse cover at (" + std::to_string(m) + "," +
                               std::to_string(n) + ")");
        out.chain_map = false;
        continue;
      }
      const long rows = B.action().bundle.fibers[SB.base[i]].rank();
      for (long a = 0; a < rows; ++a)
        R.add(static_cast<int>(SB.offset[i] + a), static_cast<int>(SA.offset[static_cast<std::size_t>(ci)] + a), 1);
    }
    R.finalize(SB.moduli);
    return out.maps.emplace(key, std::move(R)).first->second;
  };

  for (int total = 2; total <= max_total; ++total)
    for (int m = 1; m < total; ++m) level_map(m, total - m);

  // d R = R d, compared as matrices.
  for (int total = 2; total < max_total; ++total)
    for (int m = 1; m < total; ++m) {
      const int n = total - m;
      for (int d = 0; d < 2; ++d) {
        const int tm = d == 0 ? m + 1 : m, tn = d == 0 ? n : n + 1;
        const SparseMatrix& dA = d == 0 ? A.d_v(m, n) : A.d_h(m, n);
        const SparseMatrix& dB = d == 0 ? B.d_v(m, n) : B.d_h(m, n);
        const Moduli& tmod = B.space(tm, tn).moduli;
        SparseMatrix p = multiply(level_map(tm, tn), dA, tmod);
        SparseMatrix q = multiply(dB, level_map(m, n), tmod);
        bool same = true;
        for (int i = 0; i < p.rows() && same; ++i) same = p.row(i) == q.row(i);
        if (!same) {
          out.chain_map = false;
          out.problems.push_back(std::string(d == 0 ? "d_v" : "d_h") + " does not commute at (" + std::to_string(m) +
                                 "," + std::to_string(n) + ")");
        }
      }
    }

  const TotalComplex& TA = coarse.total(1);
  const TotalComplex& TB = fine.total(1);
  out.tot1 = SparseMatrix(static_cast<int>(TB.cx.groups[1].size()), static_cast<int>(TA.cx.groups[1].size()));
  for (const auto& bb : TB.blocks[1]) {
    const Block* ba = TA.find(1, bb.r, bb.s);
    const auto& R = level_map(bb.r, bb.s);
    for (int i = 0; i < R.rows(); ++i)
      for (auto [j, v] : R.row(i)) out.tot1.add(static_cast<int>(bb.offset + i), static_cast<int>(ba->offset + j), v);
  }
  out.tot1.finalize(TB.cx.groups[1]);
  return out;
}

std::vector<Vec> induced_h1(CechComplex& coarse, CechComplex& fine, const CechRestriction& r) {
  const Homology& ha = coarse.h1();
  const Homology& hb = fine.h1();
  std::vector<Vec> out;
  for (std::size_t k = 0; k < ha.group.factors.size(); ++k) {
    Vec e(ha.group.factors.size(), 0);
    e[k] = 1;
    out.push_back(hb.classify(apply(r.tot1, ha.representative(e), fine.total(1).cx.groups[1])));
  }
  return out;
}

}  // namespace dgc
