#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "dgc/core.hpp"

namespace dgc {

FiniteGroupoid group_as_groupoid(int order, const std::function<int(int, int)>& mul) {
  return make_groupoid(1, std::vector<Id>(order, 0), std::vector<Id>(order, 0), mul);
}

FiniteGroupoid cyclic_group(int n) {
  return group_as_groupoid(n, [n](int a, int b) { return (a + b) % n; });
}

FiniteGroupoid pair_groupoid(int n) {
  std::vector<Id> src, dst;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      src.push_back(i);
      dst.push_back(j);
    }
  return make_groupoid(n, src, dst, [n](Id a, Id b) { return (a / n) * n + b % n; });
}

FiniteGroupoid discrete_groupoid(int n) {
  std::vector<Id> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return make_groupoid(n, ids, ids, [](Id a, Id) { return a; });
}

namespace {

// Symmetric group on 3 letters, elements as permutations in lexicographic order.
FiniteGroupoid symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return group_as_groupoid(6, [perms](int a, int b) {
    std::array<int, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
    return static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
  });
}

FiniteGroupoid klein4() {
  return group_as_groupoid(4, [](int a, int b) { return a ^ b; });
}

}  // namespace

DoubleGroupoid make_product(const FiniteGroupoid& vg, const FiniteGroupoid& hg, std::string name) {
  if (vg.objects != 1 || hg.objects != 1) throw DomainError("make_product expects two groups");
  const int nv = vg.arrows(), nh = hg.arrows();
  std::vector<Id> t, b, l, r;
  for (int g = 0; g < nv; ++g)
    for (int x = 0; x < nh; ++x) {
      t.push_back(x);
      b.push_back(x);
      l.push_back(g);
      r.push_back(g);
    }
  return make_double_groupoid(
      std::move(name), 1, vg, hg, t, b, l, r,
      [&](Id a, Id c) { return (a / nh) * nh + hg.compose(a % nh, c % nh); },
      [&](Id a, Id c) { return vg.compose(a / nh, c / nh) * nh + a % nh; });
}

DoubleGroupoid make_point() { return make_product(cyclic_group(1), cyclic_group(1), "PT"); }

DoubleGroupoid make_vac22() { return make_product(cyclic_group(2), cyclic_group(2), "VAC22"); }

DoubleGroupoid make_coarse(const FiniteGroupoid& V, const FiniteGroupoid& H, std::string name) {
  if (V.objects != H.objects) throw DomainError("make_coarse expects groupoids over the same points");
  std::vector<Id> t, b, l, r;
  for (Id x = 0; x < H.arrows(); ++x)
    for (Id y = 0; y < H.arrows(); ++y)
      for (Id g = 0; g < V.arrows(); ++g)
        for (Id h = 0; h < V.arrows(); ++h)
          if (H.src[x] == V.src[g] && H.dst[x] == V.src[h] && H.src[y] == V.dst[g] && H.dst[y] == V.dst[h]) {
            t.push_back(x);
            b.push_back(y);
            l.push_back(g);
            r.push_back(h);
          }
  auto find = [&](Id x, Id y, Id g, Id h) {
    for (std::size_t a = 0; a < t.size(); ++a)
      if (t[a] == x && b[a] == y && l[a] == g && r[a] == h) return static_cast<Id>(a);
    return kNone;
  };
  return make_double_groupoid(
      std::move(name), V.objects, V, H, t, b, l, r,
      [&](Id a, Id c) { return find(H.compose(t[a], t[c]), H.compose(b[a], b[c]), l[a], r[c]); },
      [&](Id a, Id c) { return find(t[a], b[c], V.compose(l[a], l[c]), V.compose(r[a], r[c])); });
}

DoubleGroupoid make_pair2() { return make_coarse(pair_groupoid(2), pair_groupoid(2), "PAIR2"); }

namespace {

std::vector<Id> random_perm(int n, std::mt19937_64& rng) {
  std::vector<Id> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<Id> inverse_perm(const std::vector<Id>& p) {
  std::vector<Id> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<Id>(i);
  return q;
}

// New groupoid whose arrow i is old arrow old_of[i], objects renamed by obj.
FiniteGroupoid permute(const FiniteGroupoid& g, const std::vector<Id>& obj, const std::vector<Id>& old_of) {
  auto new_of = inverse_perm(old_of);
  std::vector<Id> src(g.arrows()), dst(g.arrows());
  for (Id i = 0; i < g.arrows(); ++i) {
    src[i] = obj[g.src[old_of[i]]];
    dst[i] = obj[g.dst[old_of[i]]];
  }
  return make_groupoid(g.objects, src, dst,
                       [&](Id a, Id b) { return new_of[g.compose(old_of[a], old_of[b])]; });
}

}  // namespace

DoubleGroupoid relabel(const DoubleGroupoid& dg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto obj = random_perm(dg.points, rng);
  auto vold = random_perm(dg.V.arrows(), rng);
  auto hold = random_perm(dg.H.arrows(), rng);
  auto bold = random_perm(dg.boxes(), rng);
  auto vnew = inverse_perm(vold), hnew = inverse_perm(hold), bnew = inverse_perm(bold);
  FiniteGroupoid V = permute(dg.V, obj, vold), H = permute(dg.H, obj, hold);
  const int n = dg.boxes();
  std::vector<Id> t(n), b(n), l(n), r(n);
  for (Id i = 0; i < n; ++i) {
    Id a = bold[i];
    t[i] = hnew[dg.t[a]];
    b[i] = hnew[dg.b[a]];
    l[i] = vnew[dg.l[a]];
    r[i] = vnew[dg.r[a]];
  }
  return make_double_groupoid(
      dg.name, dg.points, V, H, t, b, l, r, [&](Id a, Id c) { return bnew[dg.hc(bold[a], bold[c])]; },
      [&](Id a, Id c) { return bnew[dg.vc(bold[a], bold[c])]; });
}

DoubleGroupoid random_double_groupoid(std::uint64_t seed, int max_boxes) {
  std::mt19937_64 rng(seed);
  struct Candidate {
    std::string name;
    std::function<DoubleGroupoid()> make;
    int boxes;
  };
  std::vector<std::pair<std::string, std::function<FiniteGroupoid()>>> groups = {
      {"Z1", [] { return cyclic_group(1); }}, {"Z2", [] { return cyclic_group(2); }},
      {"Z3", [] { return cyclic_group(3); }}, {"Z4", [] { return cyclic_group(4); }},
      {"Z2xZ2", [] { return klein4(); }},     {"Z5", [] { return cyclic_group(5); }},
      {"Z6", [] { return cyclic_group(6); }}, {"S3", [] { return symmetric3(); }}};
  std::vector<Candidate> cands;
  for (auto& [gn, gf] : groups)
    for (auto& [hn, hf] : groups) {
      int nb = gf().arrows() * hf().arrows();
      if (nb <= max_boxes)
        cands.push_back({gn + "*" + hn, [gf = gf, hf = hf, name = gn + "*" + hn] { return make_product(gf(), hf(), name); },
                         nb});
    }
  std::vector<std::pair<std::string, std::function<FiniteGroupoid()>>> gpds = {
      {"pair2", [] { return pair_groupoid(2); }}, {"pair3", [] { return pair_groupoid(3); }},
      {"disc2", [] { return discrete_groupoid(2); }}, {"disc3", [] { return discrete_groupoid(3); }}};
  for (auto& [vn, vf] : gpds)
    for (auto& [hn, hf] : gpds) {
      if (vf().objects != hf().objects) continue;
      DoubleGroupoid c = make_coarse(vf(), hf());
      if (c.boxes() <= max_boxes)
        cands.push_back({"coarse(" + vn + "," + hn + ")",
                         [vf = vf, hf = hf, name = "coarse(" + vn + "," + hn + ")"] { return make_coarse(vf(), hf(), name); },
                         c.boxes()});
    }
  if (cands.empty()) throw DomainError("no random construction fits the box bound");
  std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
  const Candidate& c = cands[pick(rng)];
  DoubleGroupoid dg = relabel(c.make(), rng());
  dg.name = "random:" + c.name;
  return dg;
}

}  // namespace dgc
