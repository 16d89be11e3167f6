#include <algorithm>
#include <functional>
#include <string>

#include "dgc/nerve.hpp"

namespace dgc {

Id grid_point(const DoubleGroupoid& dg, const Cell& c, int i, int j) {
  if (c.m == 0 && c.n == 0) return c.e[0];
  if (c.m == 0) return j < c.n ? dg.H.src[c.e[j]] : dg.H.dst[c.e[c.n - 1]];
  if (c.n == 0) return i < c.m ? dg.V.src[c.e[i]] : dg.V.dst[c.e[c.m - 1]];
  const int bi = std::min(i, c.m - 1), bj = std::min(j, c.n - 1);
  const Id a = c.at(bi, bj);
  if (i < c.m) return j < c.n ? dg.tl(a) : dg.tr(a);
  return j < c.n ? dg.bl(a) : dg.br(a);
}

Id grid_hedge(const DoubleGroupoid& dg, const Cell& c, int i, int j) {
  if (c.m == 0) return c.e[j];
  return i < c.m ? dg.t[c.at(i, j)] : dg.b[c.at(c.m - 1, j)];
}

Id grid_vedge(const DoubleGroupoid& dg, const Cell& c, int i, int j) {
  if (c.n == 0) return c.e[i];
  return j < c.n ? dg.l[c.at(i, j)] : dg.r[c.at(i, c.n - 1)];
}

Id grid_hpath(const DoubleGroupoid& dg, const Cell& c, int i, int j0, int j1) {
  if (j0 == j1) return dg.H.ident[grid_point(dg, c, i, j0)];
  Id x = grid_hedge(dg, c, i, j0);
  for (int j = j0 + 1; j < j1; ++j) x = dg.H.compose(x, grid_hedge(dg, c, i, j));
  return x;
}

Id grid_vpath(const DoubleGroupoid& dg, const Cell& c, int j, int i0, int i1) {
  if (i0 == i1) return dg.V.ident[grid_point(dg, c, i0, j)];
  Id g = grid_vedge(dg, c, i0, j);
  for (int i = i0 + 1; i < i1; ++i) g = dg.V.compose(g, grid_vedge(dg, c, i, j));
  return g;
}

Id grid_block(const DoubleGroupoid& dg, const Cell& c, int i0, int i1, int j0, int j1) {
  Id col = kNone;
  for (int i = i0; i < i1; ++i) {
    Id row = c.at(i, j0);
    for (int j = j0 + 1; j < j1; ++j) row = dg.hc(row, c.at(i, j));
    col = col == kNone ? row : dg.vc(col, row);
  }
  return col;
}

bool is_cell(const DoubleGroupoid& dg, const Cell& c) {
  if (c.m < 0 || c.n < 0) return false;
  if (c.m == 0 && c.n == 0) return c.e.size() == 1 && c.e[0] >= 0 && c.e[0] < dg.points;
  if (c.m == 0) {
    if (static_cast<int>(c.e.size()) != c.n) return false;
    for (int j = 0; j < c.n; ++j) {
      if (c.e[j] < 0 || c.e[j] >= dg.H.arrows()) return false;
      if (j && dg.H.dst[c.e[j - 1]] != dg.H.src[c.e[j]]) return false;
    }
    return true;
  }
  if (c.n == 0) {
    if (static_cast<int>(c.e.size()) != c.m) return false;
    for (int i = 0; i < c.m; ++i) {
      if (c.e[i] < 0 || c.e[i] >= dg.V.arrows()) return false;
      if (i && dg.V.dst[c.e[i - 1]] != dg.V.src[c.e[i]]) return false;
    }
    return true;
  }
  if (c.e.size() != static_cast<std::size_t>(c.m) * c.n) return false;
  for (Id a : c.e)
    if (a < 0 || a >= dg.boxes()) return false;
  for (int i = 0; i < c.m; ++i)
    for (int j = 0; j < c.n; ++j) {
      if (j && dg.r[c.at(i, j - 1)] != dg.l[c.at(i, j)]) return false;
      if (i && dg.b[c.at(i - 1, j)] != dg.t[c.at(i, j)]) return false;
    }
  return true;
}

Cell restrict_cell(const DoubleGroupoid& dg, const Cell& c, const std::vector<int>& S, const std::vector<int>& T) {
  Cell out;
  out.m = static_cast<int>(S.size()) - 1;
  out.n = static_cast<int>(T.size()) - 1;
  if (out.m < 0 || out.n < 0) throw DomainError("restriction needs nonempty index sets");
  if (out.m == 0 && out.n == 0) {
    out.e = {grid_point(dg, c, S[0], T[0])};
  } else if (out.m == 0) {
    for (int b = 0; b < out.n; ++b) out.e.push_back(grid_hpath(dg, c, S[0], T[b], T[b + 1]));
  } else if (out.n == 0) {
    for (int a = 0; a < out.m; ++a) out.e.push_back(grid_vpath(dg, c, T[0], S[a], S[a + 1]));
  } else {
    for (int a = 0; a < out.m; ++a)
      for (int b = 0; b < out.n; ++b) out.e.push_back(grid_block(dg, c, S[a], S[a + 1], T[b], T[b + 1]));
  }
  return out;
}

namespace {

std::vector<int> range_without(int top, int skip) {
  std::vector<int> v;
  for (int i = 0; i <= top; ++i)
    if (i != skip) v.push_back(i);
  return v;
}

}  // namespace

Cell face(const DoubleGroupoid& dg, const Cell& c, Dir dir, int k) {
  if (dir == Dir::Vertical) {
    if (c.m < 1 || k < 0 || k > c.m) throw DomainError("vertical face index out of range");
    return restrict_cell(dg, c, range_without(c.m, k), range_without(c.n, -1));
  }
  if (c.n < 1 || k < 0 || k > c.n) throw DomainError("horizontal face index out of range");
  return restrict_cell(dg, c, range_without(c.m, -1), range_without(c.n, k));
}

Cell degeneracy(const DoubleGroupoid& dg, const Cell& c, Dir dir, int k) {
  Cell out;
  if (dir == Dir::Vertical) {
    if (k < 0 || k > c.m) throw DomainError("vertical degeneracy index out of range");
    out.m = c.m + 1;
    out.n = c.n;
    if (c.n == 0) {
      out.e = c.m == 0 ? std::vector<Id>{} : c.e;
      out.e.insert(out.e.begin() + k, dg.V.ident[grid_point(dg, c, k, 0)]);
      return out;
    }
    for (int i = 0; i <= c.m; ++i) {
      if (i == k)
        for (int j = 0; j < c.n; ++j) out.e.push_back(dg.idd_h[grid_hedge(dg, c, k, j)]);
      if (i < c.m)
        for (int j = 0; j < c.n; ++j) out.e.push_back(c.m == 0 ? kNone : c.at(i, j));
    }
    return out;
  }
  if (k < 0 || k > c.n) throw DomainError("horizontal degeneracy index out of range");
  out.m = c.m;
  out.n = c.n + 1;
  if (c.m == 0) {
    out.e = c.n == 0 ? std::vector<Id>{} : c.e;
    out.e.insert(out.e.begin() + k, dg.H.ident[grid_point(dg, c, 0, k)]);
    return out;
  }
  for (int i = 0; i < c.m; ++i)
    for (int j = 0; j <= c.n; ++j) {
      if (j == k) out.e.push_back(dg.idd_v[grid_vedge(dg, c, i, k)]);
      if (j < c.n) out.e.push_back(c.n == 0 ? kNone : c.at(i, j));
    }
  return out;
}

bool is_degenerate(const DoubleGroupoid& dg, const Cell& c) {
  if (c.m == 0 && c.n == 0) return false;
  if (c.m == 0) {
    for (Id x : c.e)
      if (dg.H.is_identity(x)) return true;
    return false;
  }
  if (c.n == 0) {
    for (Id g : c.e)
      if (dg.V.is_identity(g)) return true;
    return false;
  }
  for (int i = 0; i < c.m; ++i) {
    bool thin = true;
    for (int j = 0; j < c.n && thin; ++j) thin = dg.h_thin(c.at(i, j));
    if (thin) return true;
  }
  for (int j = 0; j < c.n; ++j) {
    bool thin = true;
    for (int i = 0; i < c.m && thin; ++i) thin = dg.v_thin(c.at(i, j));
    if (thin) return true;
  }
  return false;
}

Cell Level::cell(std::size_t i) const {
  Cell c;
  c.m = m;
  c.n = n;
  c.e.assign(entries(i), entries(i) + width_);
  return c;
}

long Level::index(const Cell& c) const {
  if (c.m != m || c.n != n) return -1;
  auto it = index_.find(c.e);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

Level enumerate_level(const DoubleGroupoid& dg, int m, int n, std::size_t cap) {
  if (m < 0 || n < 0) throw DomainError("negative bidegree");
  Level lv;
  lv.m = m;
  lv.n = n;
  lv.width_ = (m == 0 && n == 0) ? 1 : (m == 0 ? n : (n == 0 ? m : static_cast<std::size_t>(m) * n));
  std::vector<Id> cur(lv.width_);
  auto emit = [&]() {
    if (lv.count_ >= cap)
      throw ResourceError("nerve level (" + std::to_string(m) + "," + std::to_string(n) + ") exceeds " +
                          std::to_string(cap) + " cells");
    lv.data_.insert(lv.data_.end(), cur.begin(), cur.end());
    lv.index_.emplace(cur, lv.count_);
    ++lv.count_;
  };
  std::vector<Id> all_v(dg.V.arrows()), all_h(dg.H.arrows()), all_b(dg.boxes());
  for (Id i = 0; i < dg.V.arrows(); ++i) all_v[i] = i;
  for (Id i = 0; i < dg.H.arrows(); ++i) all_h[i] = i;
  for (Id i = 0; i < dg.boxes(); ++i) all_b[i] = i;

  if (m == 0 && n == 0) {
    for (int p = 0; p < dg.points; ++p) {
      cur[0] = p;
      emit();
    }
    return lv;
  }
  std::function<void(std::size_t)> rec;
  if (m == 0 || n == 0) {
    const FiniteGroupoid& G = m == 0 ? dg.H : dg.V;
    const auto& all = m == 0 ? all_h : all_v;
    rec = [&](std::size_t k) {
      if (k == lv.width_) return emit();
      const auto& cand = k == 0 ? all : G.comp.right_of(cur[k - 1]);
      for (Id g : cand) {
        cur[k] = g;
        rec(k + 1);
      }
    };
  } else {
    rec = [&](std::size_t k) {
      if (k == lv.width_) return emit();
      const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
      const std::vector<Id>* cand;
      if (j > 0)
        cand = &dg.hcomp.right_of(cur[k - 1]);
      else if (i > 0)
        cand = &dg.vcomp.right_of(cur[k - n]);
      else
        cand = &all_b;
      for (Id a : *cand) {
        if (j > 0 && i > 0 && dg.t[a] != dg.b[cur[k - n]]) continue;
        cur[k] = a;
        rec(k + 1);
      }
    };
  }
  rec(0);
  return lv;
}

std::vector<Cell> nerve_cells(const DoubleGroupoid& dg, int m, int n, std::size_t cap) {
  Level lv = enumerate_level(dg, m, n, cap);
  std::vector<Cell> out;
  out.reserve(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) out.push_back(lv.cell(i));
  return out;
}

const Level& Nerve::level(int m, int n) {
  auto& slot = levels_[{m, n}];
  if (!slot) slot = std::make_unique<Level>(enumerate_level(dg_, m, n, cap_));
  return *slot;
}

}  // namespace dgc
