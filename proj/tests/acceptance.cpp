// Acceptance gate: one PASS/FAIL line per criterion. Usage: acceptance [criterion].

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "dgc/cech.hpp"
#include "dgc/extensions.hpp"
#include "fixtures.hpp"
#include "opext_oracle.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dgc;

namespace {

// Pinned limits.
constexpr double kLawSeconds = 60.0;        // criterion 1, all fixtures together
constexpr double kOpextSeconds = 300.0;     // criterion 2, per fixture
constexpr int kLawDegree = 3;               // D bidegrees checked in criterion 1
constexpr int kSmashTrials = 500;           // criterion 3, per fixture
constexpr int kNerveDegree = 2;             // criteria 5 and 9
constexpr int kIndexDegree = 4;             // criterion 6
constexpr int kLesDegree = 2;               // criterion 8
constexpr std::size_t kOpextCap = 5000000;  // criterion 2 enumeration cap

struct Result {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    failures.push_back(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t random_seed() { return test::seed_for("acceptance random fixture", 2024); }

std::unique_ptr<test::Case> with_fiber(std::string name, DoubleGroupoid dg, const FinAbGroup& fiber) {
  auto c = std::make_unique<test::Case>();
  c->name = std::move(name);
  c->dg = std::move(dg);
  c->action = trivial_action(c->dg, constant_bundle(c->dg.points, fiber));
  return c;
}

void push(std::vector<std::unique_ptr<test::Case>>& cs, std::unique_ptr<test::Case> c) {
  if (c) cs.push_back(std::move(c));
}

std::string group_text(const FinAbGroup& g) {
  if (g.factors.empty()) return "0";
  std::string s;
  for (auto f : g.factors) s += (s.empty() ? "Z/" : " x Z/") + std::to_string(f);
  return s;
}

// Sum sa*a + sb*b reduced mod m is zero.
bool signed_sum_zero(const SparseMatrix& a, int sa, const SparseMatrix& b, int sb, const Moduli& m) {
  SparseMatrix s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (auto [j, v] : a.row(i)) s.add(i, j, sa * v);
    for (auto [j, v] : b.row(i)) s.add(i, j, sb * v);
  }
  s.finalize(m);
  return s.nonzeros() == 0;
}

// ---- 1 -------------------------------------------------------------------------

Result criterion1() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::unique_ptr<test::Case>> cs;
  DoubleGroupoid rnd = random_double_groupoid(random_seed(), 12);
  if (rnd.boxes() > 12) r.fail("random fixture has more than 12 boxes");
  push(cs, test::trivial_case("PT/Z2", make_point(), 2));
  push(cs, test::trivial_case("VAC22/Z2", make_vac22(), 2));
  push(cs, test::twisted_case("VAC22/Z3 twisted", make_vac22(), 3));
  push(cs, test::trivial_case("PAIR2/Z2", make_pair2(), 2));
  push(cs, test::trivial_case("random/Z2", rnd, 2));
  push(cs, test::twisted_case("random/Z3 twisted", rnd, 3));
  std::size_t identities = 0;
  for (auto& c : cs) {
    for (auto norm : {Normalization::Degenerate, Normalization::None}) {
      const std::string tag = c->name + (norm == Normalization::None ? " unnormalized" : "");
      NerveSource src(c->dg, norm);
      Bicomplex bc(src, c->action);
      const int R = kLawDegree;
      for (int p = 0; p <= R; ++p)
        for (int q = 0; q <= R; ++q) {
          if (q + 2 <= R) {
            ++identities;
            if (!is_zero(multiply(bc.d_h(p, q + 1), bc.d_h(p, q), bc.space(p, q + 2).moduli), bc.space(p, q + 2).moduli))
              r.fail(tag + ": d_H^2 != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")");
          }
          if (p + 2 <= R) {
            ++identities;
            if (!is_zero(multiply(bc.d_v(p + 1, q), bc.d_v(p, q), bc.space(p + 2, q).moduli), bc.space(p + 2, q).moduli))
              r.fail(tag + ": d_V^2 != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")");
          }
          if (p + 1 <= R && q + 1 <= R) {
            ++identities;
            const Moduli& m = bc.space(p + 1, q + 1).moduli;
            if (!signed_sum_zero(multiply(bc.d_h(p + 1, q), bc.d_v(p, q), m), 1,
                                 multiply(bc.d_v(p, q + 1), bc.d_h(p, q), m), -1, m))
              r.fail(tag + ": d_H d_V != d_V d_H at (" + std::to_string(p) + "," + std::to_string(q) + ")");
          }
          // A^{a,b} = D^{a+1,b+1} with vertical sign (-1)^b: delta_H delta_V + delta_V delta_H = 0
          if (p >= 1 && q >= 1 && p + 1 <= R && q + 1 <= R) {
            ++identities;
            const int sign = (q - 1) % 2 == 0 ? 1 : -1;
            const Moduli& m = bc.space(p + 1, q + 1).moduli;
            if (!signed_sum_zero(multiply(bc.d_h(p + 1, q), bc.d_v(p, q), m), sign,
                                 multiply(bc.d_v(p, q + 1), bc.d_h(p, q), m), -sign, m))
              r.fail(tag + ": A anticommutation fails at (" + std::to_string(p - 1) + "," + std::to_string(q - 1) + ")");
          }
        }
      TotalComplex t = total_complex(bc, R - 2);
      for (int n = 0; n + 1 < static_cast<int>(t.cx.d.size()); ++n) {
        ++identities;
        if (!is_zero(multiply(t.cx.d[n + 1], t.cx.d[n], t.cx.groups[n + 2]), t.cx.groups[n + 2]))
          r.fail(tag + ": Tot(A) d^2 != 0 in degree " + std::to_string(n));
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kLawSeconds) r.fail("runtime " + std::to_string(secs) + " s");
  r.detail << identities << " identities on " << cs.size() << " fixtures x 2 normalizations up to (" << kLawDegree
           << "," << kLawDegree << "), random fixture " << rnd.boxes() << " boxes, " << secs << " s";
  return r;
}

// ---- 2 -------------------------------------------------------------------------

Result criterion2() {
  Result r;
  const std::uint64_t seed = random_seed();
  std::vector<std::unique_ptr<test::Case>> cs;
  for (std::int64_t n : {2, 3, 4}) push(cs, test::trivial_case("PT/Z" + std::to_string(n), make_point(), n));
  push(cs, with_fiber("PT/Z2xZ2", make_point(), FinAbGroup{{2, 2}}));
  for (std::int64_t n : {2, 3, 4}) push(cs, test::trivial_case("VAC22/Z" + std::to_string(n), make_vac22(), n));
  for (std::int64_t n : {3, 4}) push(cs, test::twisted_case("VAC22/Z" + std::to_string(n) + " twisted", make_vac22(), n));
  push(cs, with_fiber("VAC22/Z2xZ2", make_vac22(), FinAbGroup{{2, 2}}));
  DoubleGroupoid small = random_double_groupoid(seed, 8);
  push(cs, test::trivial_case("random8/Z2", small, 2));
  push(cs, test::twisted_case("random8/Z3 twisted", small, 3));
  std::size_t checked = 0;
  for (auto& c : cs) {
    if (c->dg.boxes() > 8) continue;
    bool small_fibers = true;
    for (const auto& f : c->action.bundle.fibers) small_fibers = small_fibers && f.order() <= 4;
    if (!small_fibers) continue;
    ++checked;
    const auto t0 = std::chrono::steady_clock::now();
    auto o = oracle::opext_count(c->dg, c->action, kOpextCap);
    CohomologyContext ctx(c->dg, c->action);
    const std::int64_t h1 = ctx.h1().group.order();
    const double secs = seconds_since(t0);
    r.detail << c->name << " " << o.classes << "/" << h1 << "; ";
    if (o.capped) r.fail(c->name + ": enumeration capped");
    if (static_cast<std::int64_t>(o.classes) != h1)
      r.fail(c->name + ": " + std::to_string(o.classes) + " classes, |H1| = " + std::to_string(h1));
    if (secs >= kOpextSeconds) r.fail(c->name + ": runtime " + std::to_string(secs) + " s");
  }
  r.detail << checked << " fixtures (classes/|H1|)";
  return r;
}

// ---- 3 -------------------------------------------------------------------------

Result criterion3() {
  Result r;
  const std::uint64_t seed = random_seed();
  std::mt19937_64 rng(test::seed_for("acceptance smash trials", 31));
  std::vector<std::unique_ptr<test::Case>> cs;
  push(cs, test::trivial_case("PT/Z2", make_point(), 2));
  push(cs, test::trivial_case("VAC22/Z2", make_vac22(), 2));
  push(cs, test::trivial_case("VAC22/Z4", make_vac22(), 4));
  push(cs, test::twisted_case("VAC22/Z3 twisted", make_vac22(), 3));
  push(cs, test::trivial_case("PAIR2/Z2", make_pair2(), 2));
  push(cs, test::trivial_case("random/Z3", random_double_groupoid(seed, 12), 3));
  for (auto& c : cs) {
    CohomologyContext ctx(c->dg, c->action);
    const Moduli& m1 = ctx.total().cx.groups[1];
    std::size_t closed = 0, discrepancies = 0;
    for (int t = 0; t < kSmashTrials; ++t) {
      Vec x(m1.size());
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = static_cast<std::int64_t>(rng() % m1[k]);
      if (t % 2) {
        // half the trials: a random class representative plus a random coboundary
        Vec rep = ctx.h1().representative_elem(static_cast<Elem>(rng() % ctx.h1().group.order()));
        const Moduli& m0 = ctx.total().cx.groups[0];
        Vec mu(m0.size());
        for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = static_cast<std::int64_t>(rng() % m0[k]);
        Vec d = apply(ctx.total().cx.d[0], mu, m1);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = (rep[k] + d[k]) % m1[k];
      }
      TotalCocycle z = ctx.cocycle(x);
      const bool is_closed = ctx.closed(z);
      closed += is_closed;
      const bool valid = validate_double_groupoid(smash_product(c->dg, c->action, z).total).ok();
      if (valid != is_closed) ++discrepancies;
    }
    r.detail << c->name << " " << closed << " closed/" << kSmashTrials - closed << " not; ";
    if (discrepancies) r.fail(c->name + ": " + std::to_string(discrepancies) + " discrepancies");
  }
  return r;
}

// ---- 4 -------------------------------------------------------------------------

Result criterion4() {
  Result r;
  auto c = test::trivial_case("VAC22/Z2", make_vac22(), 2);
  CohomologyContext ctx(c->dg, c->action);
  const Moduli& m1 = ctx.total().cx.groups[1];
  std::size_t closed = 0, failures = 0, total = 0;
  oracle::for_each_assignment(m1, [&](const std::vector<Elem>& v) {
    ++total;
    Vec x(v.begin(), v.end());
    TotalCocycle z = ctx.cocycle(x);
    if (!ctx.closed(z)) return;
    ++closed;
    ExtensionPresentation e = smash_product(c->dg, c->action, z);
    TotalCocycle back = cocycle_from_extension(c->dg, c->action, e);
    if (ctx.classify(back) != ctx.classify(z)) ++failures;
  });
  r.detail << closed << " closed cocycles of " << total << " normalized pairs, " << failures << " failures";
  if (failures || closed == 0) r.fail("round trip");
  return r;
}

// ---- 5 -------------------------------------------------------------------------

Result criterion5() {
  Result r;
  std::vector<std::pair<std::string, DoubleGroupoid>> fx;
  fx.emplace_back("PT", make_point());
  fx.emplace_back("VAC22", make_vac22());
  fx.emplace_back("PAIR2", make_pair2());
  fx.emplace_back("random", random_double_groupoid(random_seed(), 12));
  for (auto& [name, dg] : fx) {
    std::vector<Id> core_boxes;
    core_groupoid(dg, &core_boxes);
    std::size_t cells = 0, bad_cells = 0, mats = 0, bad_mats = 0, normal = 0, bad_normal = 0;
    std::size_t orbits = 0, normal_orbits = 0, mismatched_levels = 0;
    for (int m = 0; m <= kNerveDegree; ++m)
      for (int n = 0; n <= kNerveDegree; ++n) {
        const Level& lv = enumerate_level(dg, m, n);
        cells += lv.size();
        for (std::size_t i = 0; i < lv.size(); ++i) bad_cells += psi(dg, phi(dg, lv.cell(i))) != lv.cell(i);
        for (const auto& f : corner_matrices(dg, m, n)) {
          CornerMatrix back = phi(dg, psi(dg, f));
          bool same_orbit = false;
          for (Id e : core_boxes)
            if (!same_orbit && dg.tr(e) == corner_gamma(dg, f)) same_orbit = core_translate(dg, e, f) == back;
          const bool nf = is_normal_corner(dg, f);
          ++mats;
          normal += nf;
          bad_mats += !same_orbit;
          bad_normal += nf && !same_orbit;
        }
        OrbitCensus oc = core_orbits(dg, m, n);
        if (!oc.psi_invariant) r.fail(name + ": psi not constant on orbits");
        orbits += oc.orbits;
        normal_orbits += oc.normal_orbits;
        mismatched_levels += oc.orbits != lv.size();
      }
    r.detail << name << ": cells " << cells << ", orbits " << orbits << ", normal orbits " << normal_orbits
             << ", phi(psi(f)) off the orbit of f for " << bad_mats << "/" << mats << " matrices (" << bad_normal << "/"
             << normal << " normal); ";
    if (bad_cells) r.fail(name + ": psi(phi(c)) != c for " + std::to_string(bad_cells) + " cells");
    if (bad_mats) r.fail(name + ": phi o psi is not the identity on orbits");
    if (mismatched_levels)
      r.fail(name + ": orbit count differs from cell count in " + std::to_string(mismatched_levels) + " bidegrees");
  }
  r.detail << "totals over bidegrees up to (" << kNerveDegree << "," << kNerveDegree << ")";
  return r;
}

// ---- 6 -------------------------------------------------------------------------

Result criterion6() {
  Result r;
  for (int m = 0; m <= kIndexDegree; ++m)
    for (int n = 0; n <= kIndexDegree; ++n) {
      const std::size_t want = static_cast<std::size_t>(((1 << (m + 1)) - 1) * ((1 << (n + 1)) - 1));
      if (p_count(m, n) != want || lexy_pairs(m, n).size() != want)
        r.fail("|P_" + std::to_string(m) + "," + std::to_string(n) + "| = " + std::to_string(p_count(m, n)));
    }
  auto l11 = lambda_matrix_shape(1, 1), g21 = lambda_matrix_shape(2, 1);
  r.detail << "|P_{m,n}| for m,n <= " << kIndexDegree << "; Lambda_{1,1} " << l11.first << "x" << l11.second
           << "; Gamma_{2,1} " << g21.first << "x" << g21.second;
  if (l11 != std::make_pair<std::size_t, std::size_t>(3, 3)) r.fail("Lambda_{1,1} shape");
  if (g21 != std::make_pair<std::size_t, std::size_t>(7, 3)) r.fail("Gamma_{2,1} shape");
  return r;
}

// ---- 7 -------------------------------------------------------------------------

Result criterion7() {
  Result r;
  std::vector<std::unique_ptr<test::Case>> cs;
  push(cs, test::trivial_case("PT/Z2", make_point(), 2));
  push(cs, test::trivial_case("VAC22/Z2", make_vac22(), 2));
  push(cs, test::trivial_case("VAC22/Z4", make_vac22(), 4));
  push(cs, test::twisted_case("VAC22/Z3 twisted", make_vac22(), 3));
  push(cs, test::trivial_case("PAIR2/Z2", make_pair2(), 2));
  push(cs, test::trivial_case("random/Z2", random_double_groupoid(random_seed(), 12), 2));
  for (auto& c : cs) {
    auto f = finest_cover(c->dg);
    CechComplex cx(*f, c->action);
    CohomologyContext ctx(c->dg, c->action);
    r.detail << c->name << " " << group_text(cx.h1().group) << "; ";
    if (!(cx.h1().group == ctx.h1().group))
      r.fail(c->name + ": Cech " + group_text(cx.h1().group) + " vs discrete " + group_text(ctx.h1().group));
  }
  return r;
}

// ---- 8 -------------------------------------------------------------------------

Result criterion8() {
  Result r;
  std::vector<std::unique_ptr<test::Case>> cs;
  push(cs, test::trivial_case("PT/Z2", make_point(), 2));
  push(cs, test::trivial_case("VAC22/Z2", make_vac22(), 2));
  for (auto& c : cs) {
    LesReport rep = verify_long_exact_sequence(c->dg, c->action, kLesDegree);
    r.detail << c->name << " " << rep.nodes.size() << " nodes; ";
    for (const auto& n : rep.nodes)
      if (!n.exact) r.fail(c->name + ": not exact at " + n.label);
  }
  return r;
}

// ---- 9 -------------------------------------------------------------------------

Result criterion9() {
  Result r;
  DoubleGroupoid dg = make_vac22();
  std::size_t checked = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++checked;
    if (!ok) r.fail(what);
  };
  for (int m = 0; m <= kNerveDegree; ++m)
    for (int n = 0; n <= kNerveDegree; ++n) {
      const Level& lv = enumerate_level(dg, m, n);
      for (std::size_t ci = 0; ci < lv.size(); ++ci) {
        const Cell c = lv.cell(ci);
        for (Dir dir : {Dir::Vertical, Dir::Horizontal}) {
          const int k = dir == Dir::Vertical ? m : n;
          const std::string tag = std::string(dir == Dir::Vertical ? "vertical" : "horizontal") + " at (" +
                                  std::to_string(m) + "," + std::to_string(n) + ")";
          auto d = [&](const Cell& x, int i) { return face(dg, x, dir, i); };
          auto s = [&](const Cell& x, int i) { return degeneracy(dg, x, dir, i); };
          // d_i d_j = d_{j-1} d_i, i < j
          for (int j = 0; j <= k && k >= 2; ++j)
            for (int i = 0; i < j; ++i) expect(d(d(c, j), i) == d(d(c, i), j - 1), "d_i d_j " + tag);
          for (int j = 0; j <= k; ++j) {
            expect(is_cell(dg, s(c, j)), "s_j is a cell " + tag);
            for (int i = 0; i <= k + 1; ++i) {
              if (i < j) expect(d(s(c, j), i) == s(d(c, i), j - 1), "d_i s_j, i < j " + tag);
              if (i == j || i == j + 1) expect(d(s(c, j), i) == c, "d_j s_j = d_{j+1} s_j = id " + tag);
              if (i > j + 1) expect(d(s(c, j), i) == s(d(c, i - 1), j), "d_i s_j, i > j+1 " + tag);
            }
            // s_i s_j = s_{j+1} s_i, i <= j
            for (int i = 0; i <= j; ++i) expect(s(s(c, j), i) == s(s(c, i), j + 1), "s_i s_j " + tag);
          }
          if (k >= 1)
            for (int i = 0; i <= k; ++i) expect(is_cell(dg, d(c, i)), "d_i is a cell " + tag);
        }
        // the two directions commute
        const Dir V = Dir::Vertical, H = Dir::Horizontal;
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= n; ++j) {
            expect(degeneracy(dg, degeneracy(dg, c, V, i), H, j) == degeneracy(dg, degeneracy(dg, c, H, j), V, i),
                   "mixed degeneracies");
            if (m >= 1 && n >= 1)
              expect(face(dg, face(dg, c, V, i), H, j) == face(dg, face(dg, c, H, j), V, i), "mixed faces");
            if (m >= 1)
              expect(face(dg, degeneracy(dg, c, H, j), V, i) == degeneracy(dg, face(dg, c, V, i), H, j),
                     "vertical face, horizontal degeneracy");
            if (n >= 1)
              expect(face(dg, degeneracy(dg, c, V, i), H, j) == degeneracy(dg, face(dg, c, H, j), V, i),
                     "horizontal face, vertical degeneracy");
          }
      }
    }
  r.detail << checked << " relation instances on VAC22 up to (" << kNerveDegree << "," << kNerveDegree << ")";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Result()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9};
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
  }
  int failed = 0;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only && i != only) continue;
    Result r;
    try {
      r = criteria[i - 1]();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail.str() << std::endl;
    for (const auto& f : r.failures) std::cout << "  - " << f << "\n";
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
