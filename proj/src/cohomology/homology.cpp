#include <unordered_map>

#include "dgc/cohomology.hpp"

namespace dgc {

GroupoidAction vertical_part(const DoubleAction& a) { return {a.bundle, a.v}; }
GroupoidAction horizontal_part(const DoubleAction& a) { return {a.bundle, a.h}; }

namespace {

// Composable strings g1..gn with dst(g_i) = src(g_{i+1}) and no identities.
std::vector<std::vector<Id>> strings(const FiniteGroupoid& g, int n, std::size_t cap) {
  std::vector<std::vector<Id>> out;
  if (n == 0) {
    for (int p = 0; p < g.objects; ++p) out.push_back({p});
    return out;
  }
  std::vector<Id> cur;
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == n) {
      if (out.size() >= cap) throw ResourceError("too many composable strings");
      out.push_back(cur);
      return;
    }
    for (Id a = 0; a < g.arrows(); ++a) {
      if (g.is_identity(a)) continue;
      if (!cur.empty() && g.dst[cur.back()] != g.src[a]) continue;
      cur.push_back(a);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace

CochainComplex groupoid_cochains(const FiniteGroupoid& g, const GroupoidAction& a, int nmax, std::size_t cap) {
  const auto& F = a.bundle.fibers;
  CochainComplex cx;
  std::vector<std::vector<std::vector<Id>>> S;
  std::vector<std::vector<std::size_t>> offset;
  std::vector<std::unordered_map<std::vector<Id>, std::size_t, IdVecHash>> index;
  auto base = [&](int n, const std::vector<Id>& w) { return n == 0 ? w[0] : g.src[w[0]]; };
  for (int n = 0; n <= nmax + 1; ++n) {
    S.push_back(strings(g, n, cap));
    Moduli m;
    std::vector<std::size_t> off;
    std::unordered_map<std::vector<Id>, std::size_t, IdVecHash> idx;
    for (std::size_t i = 0; i < S[n].size(); ++i) {
      off.push_back(m.size());
      idx[S[n][i]] = i;
      for (auto d : F[base(n, S[n][i])].factors) m.push_back(d);
    }
    cx.groups.push_back(m);
    offset.push_back(off);
    index.push_back(std::move(idx));
  }
  for (int n = 0; n <= nmax; ++n) {
    SparseMatrix d(static_cast<int>(cx.groups[n + 1].size()), static_cast<int>(cx.groups[n].size()));
    for (std::size_t i = 0; i < S[n + 1].size(); ++i) {
      const auto& w = S[n + 1][i];
      const Id p = g.src[w[0]];
      const int rows = static_cast<int>(F[p].factors.size());
      if (!rows) continue;
      auto plain = [&](const std::vector<Id>& f, std::int64_t sign) {
        auto it = index[n].find(f);
        if (it == index[n].end()) return;  // contains an identity
        for (int k = 0; k < rows; ++k)
          d.add(static_cast<int>(offset[n + 1][i] + k), static_cast<int>(offset[n][it->second] + k), sign);
      };
      // g1 . alpha(g2..)
      {
        std::vector<Id> f = n == 0 ? std::vector<Id>{g.dst[w[0]]} : std::vector<Id>(w.begin() + 1, w.end());
        auto it = index[n].find(f);
        if (it != index[n].end()) {
          auto m = matrix_from_table(F[g.dst[w[0]]], F[p], a.act[w[0]]);
          for (int r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < m[r].size(); ++c)
              d.add(static_cast<int>(offset[n + 1][i] + r), static_cast<int>(offset[n][it->second] + c), m[r][c]);
        }
      }
      for (int k = 1; k <= n; ++k) {
        std::vector<Id> f(w.begin(), w.end());
        f[k - 1] = g.compose(w[k - 1], w[k]);
        f.erase(f.begin() + k);
        plain(f, k % 2 ? -1 : 1);
      }
      plain(n == 0 ? std::vector<Id>{p} : std::vector<Id>(w.begin(), w.end() - 1), (n + 1) % 2 ? -1 : 1);
    }
    d.finalize(cx.groups[n + 1]);
    cx.d.push_back(std::move(d));
  }
  return cx;
}

FinAbGroup groupoid_cohomology(const FiniteGroupoid& g, const GroupoidAction& a, int n, std::size_t cap) {
  return homology(groupoid_cochains(g, a, n, cap), n).group;
}

}  // namespace dgc
