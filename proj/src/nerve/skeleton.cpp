#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

#include "dgc/nerve.hpp"

namespace dgc {

bool is_corner_matrix(const DoubleGroupoid& dg, const CornerMatrix& f) {
  if (f.e.size() != static_cast<std::size_t>(f.m + 1) * (f.n + 1)) return false;
  for (Id a : f.e)
    if (a < 0 || a >= dg.boxes()) return false;
  for (int i = 0; i <= f.m; ++i)
    for (int j = 0; j <= f.n; ++j) {
      if (j < f.n && dg.l[f.at(i, j)] != dg.l[f.at(i, j + 1)]) return false;
      if (i < f.m && dg.b[f.at(i, j)] != dg.b[f.at(i + 1, j)]) return false;
    }
  return true;
}

CornerMatrix core_translate(const DoubleGroupoid& dg, Id e, const CornerMatrix& f) {
  CornerMatrix out = f;
  for (auto& a : out.e) a = core_act(dg, e, a);
  return out;
}

bool is_normal_corner(const DoubleGroupoid& dg, const CornerMatrix& f) {
  for (int j = 0; j <= f.n; ++j)
    if (!dg.h_thin(f.at(f.m, j))) return false;
  for (int i = 0; i <= f.m; ++i)
    if (!dg.v_thin(f.at(i, 0))) return false;
  return true;
}

CornerMatrix phi(const DoubleGroupoid& dg, const Cell& c) {
  CornerMatrix f;
  f.m = c.m;
  f.n = c.n;
  for (int k = 0; k <= c.m; ++k)
    for (int l = 0; l <= c.n; ++l) {
      Id a;
      if (k < c.m && l > 0)
        a = grid_block(dg, c, k, c.m, 0, l);
      else if (l > 0)
        a = dg.idd_h[grid_hpath(dg, c, c.m, 0, l)];
      else if (k < c.m)
        a = dg.idd_v[grid_vpath(dg, c, 0, k, c.m)];
      else
        a = dg.theta(grid_point(dg, c, c.m, 0));
      f.e.push_back(a);
    }
  return f;
}

Cell psi(const DoubleGroupoid& dg, const CornerMatrix& f) {
  Cell c;
  c.m = f.m;
  c.n = f.n;
  if (f.m == 0 && f.n == 0) {
    c.e = {dg.tl(f.at(0, 0))};
  } else if (f.m == 0) {
    for (int j = 0; j < f.n; ++j) c.e.push_back(dg.H.compose(dg.H.inv[dg.b[f.at(0, j)]], dg.b[f.at(0, j + 1)]));
  } else if (f.n == 0) {
    for (int i = 0; i < f.m; ++i) c.e.push_back(dg.V.compose(dg.l[f.at(i, 0)], dg.V.inv[dg.l[f.at(i + 1, 0)]]));
  } else {
    for (int i = 0; i < f.m; ++i)
      for (int j = 0; j < f.n; ++j) {
        Id top = dg.hc(dg.hinv[f.at(i, j)], f.at(i, j + 1));
        Id bot = dg.hc(dg.hinv[dg.vinv[f.at(i + 1, j)]], dg.vinv[f.at(i + 1, j + 1)]);
        c.e.push_back(dg.vc(top, bot));
      }
  }
  return c;
}

std::vector<CornerMatrix> corner_matrices(const DoubleGroupoid& dg, int m, int n, std::size_t cap) {
  // boxes by (left side, bottom side)
  std::unordered_map<long long, std::vector<Id>> by_lb;
  const long long nh = dg.H.arrows();
  for (Id a = 0; a < dg.boxes(); ++a) by_lb[static_cast<long long>(dg.l[a]) * nh + dg.b[a]].push_back(a);
  static const std::vector<Id> none;
  auto boxes_with = [&](Id l, Id b) -> const std::vector<Id>& {
    auto it = by_lb.find(static_cast<long long>(l) * nh + b);
    return it == by_lb.end() ? none : it->second;
  };

  std::vector<CornerMatrix> out;
  std::vector<Id> ls(m + 1), bs(n + 1);
  CornerMatrix cur;
  cur.m = m;
  cur.n = n;
  cur.e.assign(static_cast<std::size_t>(m + 1) * (n + 1), kNone);
  const std::size_t cells = cur.e.size();
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == cells) {
      if (out.size() >= cap) throw ResourceError("corner matrices exceed " + std::to_string(cap));
      out.push_back(cur);
      return;
    }
    for (Id a : boxes_with(ls[k / (n + 1)], bs[k % (n + 1)])) {
      cur.e[k] = a;
      fill(k + 1);
    }
  };
  for (int gamma = 0; gamma < dg.points; ++gamma) {
    std::function<void(int)> choose_l, choose_b;
    choose_b = [&](int j) {
      if (j > n) return fill(0);
      for (Id x = 0; x < dg.H.arrows(); ++x)
        if (dg.H.src[x] == gamma) {
          bs[j] = x;
          choose_b(j + 1);
        }
    };
    choose_l = [&](int i) {
      if (i > m) return choose_b(0);
      for (Id g = 0; g < dg.V.arrows(); ++g)
        if (dg.V.dst[g] == gamma) {
          ls[i] = g;
          choose_l(i + 1);
        }
    };
    choose_l(0);
  }
  return out;
}

OrbitCensus core_orbits(const DoubleGroupoid& dg, int m, int n, std::size_t cap) {
  auto mats = corner_matrices(dg, m, n, cap);
  std::unordered_map<std::vector<Id>, std::size_t, IdVecHash> index;
  for (std::size_t i = 0; i < mats.size(); ++i) index.emplace(mats[i].e, i);
  std::vector<std::size_t> parent(mats.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Id> core;
  for (Id a = 0; a < dg.boxes(); ++a)
    if (dg.H.is_identity(dg.t[a]) && dg.V.is_identity(dg.r[a])) core.push_back(a);

  OrbitCensus oc;
  oc.matrices = mats.size();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const Id gamma = corner_gamma(dg, mats[i]);
    const Cell base = psi(dg, mats[i]);
    for (Id e : core) {
      if (dg.tr(e) != gamma) continue;
      CornerMatrix moved = core_translate(dg, e, mats[i]);
      auto it = index.find(moved.e);
      if (it == index.end()) throw DomainError("core action leaves the corner-matrix set");
      if (psi(dg, moved) != base) oc.psi_invariant = false;
      std::size_t a = find(i), b = find(it->second);
      if (a != b) parent[a] = b;
    }
  }
  std::unordered_map<std::size_t, std::size_t> normal_count;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    std::size_t r = find(i);
    if (r == i) ++oc.orbits;
    if (is_normal_corner(dg, mats[i])) ++normal_count[r];
  }
  oc.normal_orbits = normal_count.size();
  for (auto& [r, c] : normal_count) oc.max_normal_per_orbit = std::max(oc.max_normal_per_orbit, c);
  return oc;
}

}  // namespace dgc
