#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "dgc/nerve.hpp"
#include "support.hpp"

using namespace dgc;

namespace {

// All tuples of entries satisfying the adjacency conditions, from raw side maps.
std::set<std::vector<Id>> brute_cells(const DoubleGroupoid& dg, int m, int n) {
  std::set<std::vector<Id>> out;
  if (m == 0 && n == 0) {
    for (Id p = 0; p < dg.points; ++p) out.insert({p});
    return out;
  }
  const int width = (m == 0) ? n : (n == 0 ? m : m * n);
  const int alphabet = (m == 0) ? dg.H.arrows() : (n == 0 ? dg.V.arrows() : dg.boxes());
  std::vector<Id> e(width);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == width) {
      out.insert(e);
      return;
    }
    for (Id x = 0; x < alphabet; ++x) {
      e[pos] = x;
      bool ok = true;
      if (m == 0) {
        ok = pos == 0 || dg.H.dst[e[pos - 1]] == dg.H.src[x];
      } else if (n == 0) {
        ok = pos == 0 || dg.V.dst[e[pos - 1]] == dg.V.src[x];
      } else {
        int i = pos / n, j = pos % n;
        if (j > 0) ok = ok && dg.r[e[pos - 1]] == dg.l[x];
        if (i > 0) ok = ok && dg.b[e[pos - n]] == dg.t[x];
      }
      if (ok) rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

std::set<std::vector<Id>> level_cells(const Level& lv) {
  std::set<std::vector<Id>> out;
  for (std::size_t i = 0; i < lv.size(); ++i) out.insert(lv.cell(i).e);
  return out;
}

// Vertical face k of a box cell, composing rows by hand.
Cell vface_oracle(const DoubleGroupoid& dg, const Cell& c, int k) {
  Cell out;
  out.n = c.n;
  if (c.m == 1) {
    for (int j = 0; j < c.n; ++j) out.e.push_back(k == 0 ? dg.b[c.at(0, j)] : dg.t[c.at(0, j)]);
    return out;
  }
  out.m = c.m - 1;
  for (int i = 0; i < c.m; ++i) {
    if (k == 0 && i == 0) continue;
    if (k == c.m && i == c.m - 1) continue;
    if (k > 0 && k < c.m && i == k) continue;
    for (int j = 0; j < c.n; ++j)
      out.e.push_back(k > 0 && k < c.m && i == k - 1 ? dg.vc(c.at(i, j), c.at(i + 1, j)) : c.at(i, j));
  }
  return out;
}

Cell hface_oracle(const DoubleGroupoid& dg, const Cell& c, int k) {
  Cell out;
  out.m = c.m;
  if (c.n == 1) {
    out.n = 0;
    for (int i = 0; i < c.m; ++i) out.e.push_back(k == 0 ? dg.r[c.at(i, 0)] : dg.l[c.at(i, 0)]);
    return out;
  }
  out.n = c.n - 1;
  for (int i = 0; i < c.m; ++i)
    for (int j = 0; j < c.n; ++j) {
      if (k == 0 && j == 0) continue;
      if (k == c.n && j == c.n - 1) continue;
      if (k > 0 && k < c.n && j == k) continue;
      out.e.push_back(k > 0 && k < c.n && j == k - 1 ? dg.hc(c.at(i, j), c.at(i, j + 1)) : c.at(i, j));
    }
  return out;
}

}  // namespace

TEST_SUITE("nerve") {
  TEST_CASE("level counts") {
    DoubleGroupoid pt = make_point();
    Level l21 = enumerate_level(pt, 2, 1);
    REQUIRE(l21.size() == 1);
    for (Id x : l21.cell(0).e) CHECK(x == pt.theta(0));

    DoubleGroupoid vac = make_vac22();
    CHECK(enumerate_level(vac, 1, 1).size() == 4);
    CHECK(enumerate_level(vac, 0, 0).size() == 1);

    std::vector<DoubleGroupoid> dgs{pt, vac, make_pair2()};
    const std::uint64_t seed = test::seed_for("nerve random fixtures", 61);
    for (std::uint64_t s = seed; s < seed + 3; ++s) dgs.push_back(random_double_groupoid(s, 10));
    for (const auto& dg : dgs)
      for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n) {
          CAPTURE(dg.name);
          CAPTURE(m);
          CAPTURE(n);
          Level lv = enumerate_level(dg, m, n);
          CHECK(level_cells(lv) == brute_cells(dg, m, n));
          for (std::size_t i = 0; i < lv.size(); ++i) {
            CHECK(is_cell(dg, lv.cell(i)));
            CHECK(lv.index(lv.cell(i)) == static_cast<long>(i));
          }
          for (std::size_t i = 1; i < lv.size(); ++i) CHECK(lv.cell(i - 1).e < lv.cell(i).e);
        }
  }

  TEST_CASE("resource cap") {
    DoubleGroupoid pair = make_pair2();
    CHECK_THROWS_AS(enumerate_level(pair, 3, 3, 1000), ResourceError);
    CHECK_NOTHROW(enumerate_level(pair, 1, 1, 1000));
  }

  TEST_CASE("faces") {
    DoubleGroupoid vac = make_vac22();
    DoubleGroupoid pair = make_pair2();
    for (const DoubleGroupoid* dg : {&vac, &pair})
      for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {1, 3}}) {
        Level lv = enumerate_level(*dg, m, n);
        for (std::size_t i = 0; i < lv.size(); ++i) {
          Cell c = lv.cell(i);
          for (int k = 0; k <= m; ++k) {
            Cell f = face(*dg, c, Dir::Vertical, k);
            CHECK(f == vface_oracle(*dg, c, k));
            CHECK(is_cell(*dg, f));
          }
          for (int k = 0; k <= n; ++k) CHECK(face(*dg, c, Dir::Horizontal, k) == hface_oracle(*dg, c, k));
        }
      }
    // H-arrow faces on a 2-path: ends are dropped, the middle composes
    Level h2 = enumerate_level(pair, 0, 2);
    for (std::size_t i = 0; i < h2.size(); ++i) {
      Cell c = h2.cell(i);
      CHECK(face(pair, c, Dir::Horizontal, 0).e == std::vector<Id>{c.e[1]});
      CHECK(face(pair, c, Dir::Horizontal, 2).e == std::vector<Id>{c.e[0]});
      CHECK(face(pair, c, Dir::Horizontal, 1).e == std::vector<Id>{pair.H.compose(c.e[0], c.e[1])});
    }
    // simplicial identities in both directions
    Level l22 = enumerate_level(pair, 2, 2);
    for (std::size_t i = 0; i < l22.size(); ++i) {
      Cell c = l22.cell(i);
      for (Dir d : {Dir::Vertical, Dir::Horizontal})
        for (int j = 1; j <= 2; ++j)
          for (int k = 0; k < j; ++k)
            CHECK(face(pair, face(pair, c, d, j), d, k) == face(pair, face(pair, c, d, k), d, j - 1));
      for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k)
          CHECK(face(pair, face(pair, c, Dir::Vertical, j), Dir::Horizontal, k) ==
                face(pair, face(pair, c, Dir::Horizontal, k), Dir::Vertical, j));
    }
    Cell c = enumerate_level(vac, 1, 1).cell(0);
    CHECK_THROWS_AS(face(vac, c, Dir::Vertical, 2), DomainError);
    CHECK_THROWS_AS(face(vac, c, Dir::Horizontal, -1), DomainError);
    CHECK_THROWS_AS(degeneracy(vac, c, Dir::Vertical, 3), DomainError);
    CHECK_THROWS_AS(face(vac, enumerate_level(vac, 0, 1).cell(0), Dir::Vertical, 0), DomainError);
  }

  TEST_CASE("degeneracies") {
    DoubleGroupoid pt = make_point();
    Cell d = degeneracy(pt, enumerate_level(pt, 1, 1).cell(0), Dir::Vertical, 0);
    CHECK(d == enumerate_level(pt, 2, 1).cell(0));

    for (const DoubleGroupoid& dg : {make_vac22(), make_pair2()})
      for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}, {2, 1}, {1, 2}}) {
        Level lv = enumerate_level(dg, m, n);
        for (std::size_t i = 0; i < lv.size(); ++i) {
          Cell c = lv.cell(i);
          for (int k = 0; k <= m; ++k) {
            Cell s = degeneracy(dg, c, Dir::Vertical, k);
            CHECK(is_cell(dg, s));
            CHECK(is_degenerate(dg, s));
            CHECK(face(dg, s, Dir::Vertical, k) == c);
            CHECK(face(dg, s, Dir::Vertical, k + 1) == c);
          }
          for (int k = 0; k <= n; ++k) {
            Cell s = degeneracy(dg, c, Dir::Horizontal, k);
            CHECK(is_degenerate(dg, s));
            CHECK(face(dg, s, Dir::Horizontal, k) == c);
            CHECK(face(dg, s, Dir::Horizontal, k + 1) == c);
          }
        }
      }
    // a non-identity H arrow is not degenerate
    DoubleGroupoid pair = make_pair2();
    Level h1 = enumerate_level(pair, 0, 1);
    std::size_t nondeg = 0;
    for (std::size_t i = 0; i < h1.size(); ++i) nondeg += !is_degenerate(pair, h1.cell(i));
    CHECK(nondeg == static_cast<std::size_t>(pair.H.arrows() - pair.H.objects));
  }

  TEST_CASE("core orbits and the staircase maps") {
    DoubleGroupoid pt = make_point();
    OrbitCensus cp = core_orbits(pt, 1, 1);
    CHECK(cp.orbits == 1);
    CHECK(cp.normal_orbits == 1);

    std::vector<DoubleGroupoid> dgs{make_vac22(), make_pair2()};
    const std::uint64_t seed = test::seed_for("staircase fixtures", 67);
    dgs.push_back(random_double_groupoid(seed, 10));
    for (const auto& dg : dgs)
      for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}) {
        CAPTURE(dg.name);
        CAPTURE(m);
        CAPTURE(n);
        Level lv = enumerate_level(dg, m, n);
        OrbitCensus cen = core_orbits(dg, m, n);
        // normal matrices: one orbit per cell
        CHECK(cen.normal_orbits == lv.size());
        CHECK(cen.psi_invariant);
        for (std::size_t i = 0; i < lv.size(); ++i) {
          Cell c = lv.cell(i);
          CornerMatrix f = phi(dg, c);
          CHECK(is_corner_matrix(dg, f));
          CHECK(is_normal_corner(dg, f));
          CHECK(psi(dg, f) == c);
          for (Id e = 0; e < dg.boxes(); ++e) {
            if (!dg.H.is_identity(dg.t[e]) || !dg.V.is_identity(dg.r[e]) || dg.tr(e) != corner_gamma(dg, f)) continue;
            CHECK(psi(dg, core_translate(dg, e, f)) == c);
          }
        }
      }
    // the literal orbit set is larger once the core is trivial but the fibers are not
    OrbitCensus v00 = core_orbits(make_vac22(), 0, 0);
    CHECK(v00.orbits == 4);
    CHECK(v00.normal_orbits == 1);
  }
}
