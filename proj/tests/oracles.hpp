#pragma once

// Brute-force references written directly against the box tables. They do not
// use the nerve enumeration or the sparse coboundary matrices.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dgc/core.hpp"

namespace dgc::oracle {

using Pair = std::pair<Id, Id>;

struct DegreeOne {
  std::vector<Pair> vpairs;  // F over G, b(F) = t(G)
  std::vector<Pair> hpairs;  // F left of G, r(F) = l(G)
  std::map<Pair, int> vidx, hidx;
};

inline DegreeOne degree_one(const DoubleGroupoid& dg) {
  DegreeOne d;
  for (Id f = 0; f < dg.boxes(); ++f)
    for (Id g = 0; g < dg.boxes(); ++g) {
      if (dg.b[f] == dg.t[g]) {
        d.vidx[{f, g}] = static_cast<int>(d.vpairs.size());
        d.vpairs.push_back({f, g});
      }
      if (dg.r[f] == dg.l[g]) {
        d.hidx[{f, g}] = static_cast<int>(d.hpairs.size());
        d.hpairs.push_back({f, g});
      }
    }
  return d;
}

// Normalized: a row of h-thin boxes or a column of v-thin boxes forces zero.
inline bool sigma_pinned(const DoubleGroupoid& dg, Pair p) {
  return dg.h_thin(p.first) || dg.h_thin(p.second) || (dg.v_thin(p.first) && dg.v_thin(p.second));
}
inline bool tau_pinned(const DoubleGroupoid& dg, Pair p) {
  return dg.v_thin(p.first) || dg.v_thin(p.second) || (dg.h_thin(p.first) && dg.h_thin(p.second));
}

struct Pairing {
  std::vector<Elem> sigma, tau;  // indexed like vpairs / hpairs
  bool operator<(const Pairing& o) const { return std::tie(sigma, tau) < std::tie(o.sigma, o.tau); }
};

// The three identities characterizing closed total 1-cochains.
inline bool closed(const DoubleGroupoid& dg, const DoubleAction& a, const DegreeOne& d, const Pairing& z) {
  const auto& K = a.bundle.fibers;
  auto S = [&](Id f, Id g) { return z.sigma[d.vidx.at({f, g})]; };
  auto T = [&](Id f, Id g) { return z.tau[d.hidx.at({f, g})]; };
  for (auto [F, G] : d.hpairs)
    for (Id H : dg.hcomp.right_of(G)) {
      const FinAbGroup& k = K[dg.bl(F)];
      Elem lhs = k.add(T(F, G), T(dg.hc(F, G), H));
      Elem rhs = k.add(T(F, dg.hc(G, H)), a.act_h(dg.b[F], T(G, H)));
      if (lhs != rhs) return false;
    }
  for (auto [F, G] : d.vpairs)
    for (Id H : dg.vcomp.right_of(G)) {
      const FinAbGroup& k = K[dg.bl(H)];
      Elem lhs = k.add(S(G, H), S(F, dg.vc(G, H)));
      Elem rhs = k.add(a.act_v(dg.V.inv[dg.l[H]], S(F, G)), S(dg.vc(F, G), H));
      if (lhs != rhs) return false;
    }
  for (auto [F, G] : d.hpairs)
    for (Id H : dg.vcomp.right_of(F))
      for (Id J : dg.vcomp.right_of(G)) {
        if (dg.r[H] != dg.l[J]) continue;
        const FinAbGroup& k = K[dg.bl(H)];
        Elem lhs = k.add(k.add(a.act_v(dg.V.inv[dg.l[H]], T(F, G)), T(H, J)), S(dg.hc(F, G), dg.hc(H, J)));
        Elem rhs = k.add(k.add(a.act_h(dg.b[H], S(G, J)), S(F, H)), T(dg.vc(F, H), dg.vc(G, J)));
        if (lhs != rhs) return false;
      }
  return true;
}

// d^0 mu through the section-change formulas.
inline Pairing coboundary(const DoubleGroupoid& dg, const DoubleAction& a, const DegreeOne& d,
                          const std::vector<Elem>& mu) {
  const auto& K = a.bundle.fibers;
  Pairing z;
  for (auto [F, G] : d.vpairs) {
    const FinAbGroup& k = K[dg.bl(G)];
    z.sigma.push_back(k.add(k.sub(mu[G], mu[dg.vc(F, G)]), a.act_v(dg.V.inv[dg.l[G]], mu[F])));
  }
  for (auto [F, G] : d.hpairs) {
    const FinAbGroup& k = K[dg.bl(F)];
    z.tau.push_back(k.add(k.sub(a.act_h(dg.b[F], mu[G]), mu[dg.hc(F, G)]), mu[F]));
  }
  return z;
}

// Calls f on every assignment of fiber elements to the free slots.
inline void for_each_assignment(const std::vector<std::int64_t>& orders, const std::function<void(const std::vector<Elem>&)>& f) {
  std::vector<Elem> cur(orders.size(), 0);
  while (true) {
    f(cur);
    std::size_t i = 0;
    for (; i < orders.size(); ++i) {
      if (++cur[i] < orders[i]) break;
      cur[i] = 0;
    }
    if (i == orders.size()) return;
  }
}

struct H1Count {
  std::size_t closed = 0, coboundaries = 0;
  std::size_t classes() const { return coboundaries ? closed / coboundaries : 0; }
};

// Normalized closed pairs and normalized coboundaries, by exhaustion.
inline H1Count h1_count(const DoubleGroupoid& dg, const DoubleAction& a) {
  DegreeOne d = degree_one(dg);
  const auto& K = a.bundle.fibers;
  std::vector<std::int64_t> orders;
  std::vector<std::pair<int, int>> slot;  // (0 sigma / 1 tau, index)
  for (std::size_t i = 0; i < d.vpairs.size(); ++i)
    if (!sigma_pinned(dg, d.vpairs[i])) {
      orders.push_back(K[dg.bl(d.vpairs[i].second)].order());
      slot.push_back({0, static_cast<int>(i)});
    }
  for (std::size_t i = 0; i < d.hpairs.size(); ++i)
    if (!tau_pinned(dg, d.hpairs[i])) {
      orders.push_back(K[dg.bl(d.hpairs[i].first)].order());
      slot.push_back({1, static_cast<int>(i)});
    }
  H1Count c;
  for_each_assignment(orders, [&](const std::vector<Elem>& v) {
    Pairing z{std::vector<Elem>(d.vpairs.size(), 0), std::vector<Elem>(d.hpairs.size(), 0)};
    for (std::size_t k = 0; k < v.size(); ++k) (slot[k].first ? z.tau : z.sigma)[slot[k].second] = v[k];
    if (closed(dg, a, d, z)) ++c.closed;
  });
  std::vector<std::int64_t> morders;
  std::vector<Id> mslot;
  for (Id A = 0; A < dg.boxes(); ++A)
    if (!dg.v_thin(A) && !dg.h_thin(A)) {
      morders.push_back(K[dg.bl(A)].order());
      mslot.push_back(A);
    }
  std::set<Pairing> cob;
  for_each_assignment(morders, [&](const std::vector<Elem>& v) {
    std::vector<Elem> mu(dg.boxes(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) mu[mslot[k]] = v[k];
    cob.insert(coboundary(dg, a, d, mu));
  });
  c.coboundaries = cob.size();
  return c;
}

// Maps alpha on boxes obeying both morphism identities (all boxes free).
inline std::size_t h0_count(const DoubleGroupoid& dg, const DoubleAction& a) {
  const auto& K = a.bundle.fibers;
  std::vector<std::int64_t> orders;
  for (Id A = 0; A < dg.boxes(); ++A) orders.push_back(K[dg.bl(A)].order());
  std::size_t n = 0;
  for_each_assignment(orders, [&](const std::vector<Elem>& al) {
    for (Id A = 0; A < dg.boxes(); ++A)
      for (Id B : dg.vcomp.right_of(A)) {
        const FinAbGroup& k = K[dg.bl(B)];
        if (al[dg.vc(A, B)] != k.add(al[B], a.act_v(dg.V.inv[dg.l[B]], al[A]))) return;
      }
    for (Id A = 0; A < dg.boxes(); ++A)
      for (Id B : dg.hcomp.right_of(A)) {
        const FinAbGroup& k = K[dg.bl(A)];
        if (al[dg.hc(A, B)] != k.add(a.act_h(dg.b[A], al[B]), al[A])) return;
      }
    ++n;
  });
  return n;
}

}  // namespace dgc::oracle
