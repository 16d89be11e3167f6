#include <algorithm>
#include <map>

#include "dgc/cech.hpp"

namespace dgc {

Cover normalize_cover(Cover c) {
  if (c.carrier < 0) throw DomainError("negative carrier");
  std::vector<bool> seen(c.carrier, false);
  for (auto& s : c.sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (Id x : s) {
      if (x < 0 || x >= c.carrier) throw DomainError("cover element out of range: " + std::to_string(x));
      seen[x] = true;
    }
  }
  for (int x = 0; x < c.carrier; ++x)
    if (!seen[x]) throw DomainError("not a cover: " + std::to_string(x) + " is in no set");
  return c;
}

Cover singleton_cover(int carrier) {
  Cover c{carrier, {}};
  for (Id x = 0; x < carrier; ++x) c.sets.push_back({x});
  return c;
}

Cover whole_cover(int carrier) {
  Cover c{carrier, {{}}};
  for (Id x = 0; x < carrier; ++x) c.sets[0].push_back(x);
  return c;
}

bool cover_contains(const Cover& c, std::size_t set, Id x) {
  const auto& s = c.sets[set];
  return std::binary_search(s.begin(), s.end(), x);
}

std::optional<std::vector<Id>> refinement_map(const Cover& coarse, const Cover& fine) {
  std::vector<Id> theta;
  for (const auto& f : fine.sets) {
    Id found = kNone;
    for (std::size_t i = 0; i < coarse.sets.size() && found == kNone; ++i)
      if (std::includes(coarse.sets[i].begin(), coarse.sets[i].end(), f.begin(), f.end())) found = static_cast<Id>(i);
    if (found == kNone) return std::nullopt;
    theta.push_back(found);
  }
  return theta;
}

CechGroupoid cech_groupoid(const FiniteGroupoid& g, const Cover& raw) {
  Cover cover = normalize_cover(raw);
  if (cover.carrier != g.objects) throw DomainError("cover carrier differs from the object set");
  CechGroupoid out;
  std::map<std::array<Id, 2>, Id> obj;
  for (std::size_t i = 0; i < cover.sets.size(); ++i)
    for (Id x : cover.sets[i]) {
      obj[{static_cast<Id>(i), x}] = static_cast<Id>(out.objects.size());
      out.objects.push_back({static_cast<Id>(i), x});
    }
  std::map<std::array<Id, 3>, Id> arr;
  std::vector<Id> src, dst;
  const Id I = static_cast<Id>(cover.sets.size());
  for (Id i = 0; i < I; ++i)
    for (Id a = 0; a < g.arrows(); ++a) {
      if (!cover_contains(cover, i, g.src[a])) continue;
      for (Id j = 0; j < I; ++j) {
        if (!cover_contains(cover, j, g.dst[a])) continue;
        arr[{i, a, j}] = static_cast<Id>(out.arrows.size());
        out.arrows.push_back({i, a, j});
        src.push_back(obj.at({i, g.src[a]}));
        dst.push_back(obj.at({j, g.dst[a]}));
      }
    }
  const auto& A = out.arrows;
  out.g = make_groupoid(static_cast<int>(out.objects.size()), src, dst, [&](Id x, Id y) {
    return arr.at({A[x][0], g.compose(A[x][1], A[y][1]), A[y][2]});
  });
  return out;
}

CechDoubleGroupoid cech_double_groupoid(const DoubleGroupoid& dg, const Cover& raw) {
  Cover cover = normalize_cover(raw);
  if (cover.carrier != dg.points) throw DomainError("cover carrier differs from the point set");
  CechDoubleGroupoid out;
  out.V = cech_groupoid(dg.V, cover);
  out.H = cech_groupoid(dg.H, cover);
  for (auto [i, x] : out.V.objects) out.point_base.push_back(x);
  // Both Cech groupoids list objects in the same order.
  std::map<std::array<Id, 3>, Id> va, ha;
  for (std::size_t a = 0; a < out.V.arrows.size(); ++a) va[out.V.arrows[a]] = static_cast<Id>(a);
  for (std::size_t a = 0; a < out.H.arrows.size(); ++a) ha[out.H.arrows[a]] = static_cast<Id>(a);

  std::map<std::array<Id, 5>, Id> box;
  std::vector<Id> t, b, l, r;
  const Id I = static_cast<Id>(cover.sets.size());
  for (Id B = 0; B < dg.boxes(); ++B)
    for (Id i = 0; i < I; ++i) {
      if (!cover_contains(cover, i, dg.tl(B))) continue;
      for (Id j = 0; j < I; ++j) {
        if (!cover_contains(cover, j, dg.tr(B))) continue;
        for (Id k = 0; k < I; ++k) {
          if (!cover_contains(cover, k, dg.br(B))) continue;
          for (Id ll = 0; ll < I; ++ll) {
            if (!cover_contains(cover, ll, dg.bl(B))) continue;
            std::array<Id, 5> key{i, j, k, ll, B};
            box[key] = static_cast<Id>(out.boxes.size());
            out.boxes.push_back(key);
            t.push_back(ha.at({i, dg.t[B], j}));
            b.push_back(ha.at({ll, dg.b[B], k}));
            l.push_back(va.at({i, dg.l[B], ll}));
            r.push_back(va.at({j, dg.r[B], k}));
          }
        }
      }
    }
  const auto& X = out.boxes;
  auto hc = [&](Id a, Id c) {
    return box.at({X[a][0], X[c][1], X[c][2], X[a][3], dg.hc(X[a][4], X[c][4])});
  };
  auto vc = [&](Id a, Id c) {
    return box.at({X[a][0], X[a][1], X[c][2], X[c][3], dg.vc(X[a][4], X[c][4])});
  };
  out.dg = make_double_groupoid(dg.name + "[U]", static_cast<int>(out.V.objects.size()), out.V.g, out.H.g, t, b, l, r,
                                hc, vc);
  return out;
}

DoubleAction pullback_action(const CechDoubleGroupoid& c, const DoubleAction& a) {
  DoubleAction out;
  for (Id x : c.point_base) out.bundle.fibers.push_back(a.bundle.fibers[x]);
  for (const auto& arr : c.V.arrows) out.v.push_back(a.v[arr[1]]);
  for (const auto& arr : c.H.arrows) out.h.push_back(a.h[arr[1]]);
  return out;
}

bool is_forgetful_isomorphism(const CechDoubleGroupoid& c, const DoubleGroupoid& dg) {
  const DoubleGroupoid& X = c.dg;
  if (X.boxes() != dg.boxes() || X.points != dg.points || X.V.arrows() != dg.V.arrows() ||
      X.H.arrows() != dg.H.arrows())
    return false;
  auto bij = [](const auto& labels, int pos, int n) {
    std::vector<bool> hit(n, false);
    for (const auto& a : labels) {
      if (hit[a[pos]]) return false;
      hit[a[pos]] = true;
    }
    return true;
  };
  if (!bij(c.boxes, 4, dg.boxes()) || !bij(c.V.arrows, 1, dg.V.arrows()) || !bij(c.H.arrows, 1, dg.H.arrows()))
    return false;
  auto box = [&](Id a) { return c.boxes[a][4]; };
  auto varr = [&](Id g) { return c.V.arrows[g][1]; };
  auto harr = [&](Id x) { return c.H.arrows[x][1]; };
  for (Id p = 0; p < X.points; ++p)
    if (c.point_base[p] != p) return false;
  for (Id g = 0; g < X.V.arrows(); ++g)
    if (dg.V.src[varr(g)] != c.point_base[X.V.src[g]] || dg.V.dst[varr(g)] != c.point_base[X.V.dst[g]]) return false;
  for (Id x = 0; x < X.H.arrows(); ++x)
    if (dg.H.src[harr(x)] != c.point_base[X.H.src[x]] || dg.H.dst[harr(x)] != c.point_base[X.H.dst[x]]) return false;
  for (Id a = 0; a < X.boxes(); ++a) {
    const Id B = box(a);
    if (harr(X.t[a]) != dg.t[B] || harr(X.b[a]) != dg.b[B] || varr(X.l[a]) != dg.l[B] || varr(X.r[a]) != dg.r[B])
      return false;
    if (box(X.hinv[a]) != dg.hinv[B] || box(X.vinv[a]) != dg.vinv[B]) return false;
    for (Id e : X.hcomp.right_of(a))
      if (box(X.hc(a, e)) != dg.hc(B, box(e))) return false;
    for (Id e : X.vcomp.right_of(a))
      if (box(X.vc(a, e)) != dg.vc(B, box(e))) return false;
  }
  for (Id g = 0; g < X.V.arrows(); ++g)
    if (box(X.idd_v[g]) != dg.idd_v[varr(g)]) return false;
  for (Id x = 0; x < X.H.arrows(); ++x)
    if (box(X.idd_h[x]) != dg.idd_h[harr(x)]) return false;
  return true;
}

}  // namespace dgc
