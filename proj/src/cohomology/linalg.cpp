#include "dgc/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dgc {

void SparseMatrix::add(int i, int j, std::int64_t v) {
  if (v != 0) data_[i].emplace_back(j, v);
}

void SparseMatrix::finalize(const Moduli& row_mod) {
  for (int i = 0; i < rows_; ++i) {
    auto& r = data_[i];
    std::sort(r.begin(), r.end());
    std::vector<std::pair<int, std::int64_t>> out;
    const std::int64_t m = row_mod[i];
    for (std::size_t k = 0; k < r.size();) {
      std::size_t l = k;
      std::int64_t s = 0;
      for (; l < r.size() && r[l].first == r[k].first; ++l) s = (s + r[l].second % m) % m;
      if (s < 0) s += m;
      if (s) out.emplace_back(r[k].first, s);
      k = l;
    }
    r.swap(out);
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Vec apply(const SparseMatrix& m, const Vec& x, const Moduli& row_mod) {
  Vec y(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    const std::int64_t q = row_mod[i];
    __int128 s = 0;
    for (auto [j, v] : m.row(i)) s += static_cast<__int128>(v) * x[j];
    std::int64_t r = static_cast<std::int64_t>(s % q);
    y[i] = r < 0 ? r + q : r;
  }
  return y;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const Moduli& row_mod) {
  SparseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    std::map<int, __int128> acc;
    for (auto [j, v] : a.row(i))
      for (auto [k, w] : b.row(j)) acc[k] += static_cast<__int128>(v) * w;
    for (auto [k, s] : acc) {
      std::int64_t r = static_cast<std::int64_t>(s % row_mod[i]);
      if (r) c.add(i, k, r);
    }
  }
  c.finalize(row_mod);
  return c;
}

bool is_zero(const SparseMatrix& m, const Moduli& row_mod) {
  for (int i = 0; i < m.rows(); ++i)
    for (auto [j, v] : m.row(i))
      if (v % row_mod[i] != 0) return false;
  return true;
}

bool is_zero(const Vec& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) f.emplace_back(p, k);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

namespace {

std::int64_t ipow(std::int64_t p, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= p;
  return r;
}

int valuation(std::int64_t x, std::int64_t p, int e) {
  if (x == 0) return e;
  int v = 0;
  while (x % p == 0 && v < e) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t mod(std::int64_t x, std::int64_t q) {
  x %= q;
  return x < 0 ? x + q : x;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q);
}

// Inverse of a unit modulo q.
std::int64_t inverse_mod(std::int64_t a, std::int64_t q) {
  std::int64_t g = q, x = 0, x1 = 1, a1 = mod(a, q);
  while (a1) {
    std::int64_t t = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - t * a1);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  if (g != 1) throw DomainError("not a unit");
  return mod(x, q);
}

std::vector<Vec> identity(int n) {
  std::vector<Vec> m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Unit multiplier u with u = 1 mod p^a and u = 0 mod d / p^a.
std::int64_t primary_unit(std::int64_t d, std::int64_t pa) {
  std::int64_t rest = d / pa;
  if (pa == 1) return 0;
  return mulmod(rest, inverse_mod(rest % pa, pa), d);
}

}  // namespace

LocalSmith local_smith(std::vector<Vec> a, int cols, std::int64_t p, int e, bool want_u, bool want_v) {
  LocalSmith s;
  s.p = p;
  s.e = e;
  s.q = ipow(p, e);
  const std::int64_t q = s.q;
  const int R = static_cast<int>(a.size());
  const int C = cols;
  for (auto& row : a)
    for (auto& x : row) x = mod(x, q);
  if (want_u) {
    s.U = identity(R);
    s.Uinv = identity(R);
  }
  if (want_v) s.V = identity(C);
  const int n = std::min(R, C);
  s.val.assign(n, e);
  // column-wise valuation cache is not worth it at these sizes
  for (int t = 0; t < n; ++t) {
    int best = e, pi = -1, pj = -1;
    for (int i = t; i < R && best > 0; ++i)
      for (int j = t; j < C; ++j) {
        if (a[i][j] == 0) continue;
        int v = valuation(a[i][j], p, e);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (pi < 0) break;
    if (pi != t) {
      std::swap(a[pi], a[t]);
      if (want_u) {
        std::swap(s.U[pi], s.U[t]);
        for (auto& row : s.Uinv) std::swap(row[pi], row[t]);
      }
    }
    if (pj != t) {
      for (auto& row : a) std::swap(row[pj], row[t]);
      if (want_v)
        for (auto& row : s.V) std::swap(row[pj], row[t]);
    }
    const std::int64_t pv = ipow(p, best);
    const std::int64_t w = a[t][t] / pv;
    if (w != 1) {
      const std::int64_t winv = inverse_mod(w, q);
      for (auto& x : a[t]) x = mulmod(x, winv, q);
      if (want_u) {
        for (auto& x : s.U[t]) x = mulmod(x, winv, q);
        for (auto& row : s.Uinv) row[t] = mulmod(row[t], w % q, q);
      }
    }
    for (int i = t + 1; i < R; ++i) {
      if (a[i][t] == 0) continue;
      const std::int64_t f = a[i][t] / pv;
      for (int j = t; j < C; ++j)
        if (a[t][j]) a[i][j] = mod(a[i][j] - mulmod(f, a[t][j], q), q);
      if (want_u) {
        for (int j = 0; j < R; ++j)
          if (s.U[t][j]) s.U[i][j] = mod(s.U[i][j] - mulmod(f, s.U[t][j], q), q);
        for (auto& row : s.Uinv)
          if (row[i]) row[t] = mod(row[t] + mulmod(f, row[i], q), q);
      }
    }
    for (int j = t + 1; j < C; ++j) {
      if (a[t][j] == 0) continue;
      const std::int64_t f = a[t][j] / pv;
      a[t][j] = 0;
      if (want_v)
        for (auto& row : s.V)
          if (row[t]) row[j] = mod(row[j] - mulmod(f, row[t], q), q);
    }
    s.val[t] = best;
  }
  return s;
}

Homology homology(const CochainComplex& cx, int n) {
  if (n < 0 || n > cx.top()) throw DomainError("degree out of range");
  Homology h;
  h.moduli = cx.groups[n];
  const Moduli& Cn = cx.groups[n];
  const Moduli* Cnext = n < cx.top() ? &cx.groups[n + 1] : nullptr;
  const Moduli* Cprev = n > 0 ? &cx.groups[n - 1] : nullptr;
  if (Cnext && static_cast<int>(cx.d.size()) <= n) throw DomainError("missing differential");
  // The elimination below is dense.
  constexpr double kDenseEntries = 1e8;
  const double wide = static_cast<double>(std::max(Cn.size(), Cnext ? Cnext->size() : std::size_t{0}));
  if (static_cast<double>(Cn.size()) * wide > kDenseEntries ||
      (Cprev && static_cast<double>(Cprev->size()) * static_cast<double>(Cn.size()) > kDenseEntries))
    throw ResourceError("cochain groups too large for dense elimination");

  std::set<std::int64_t> primes;
  for (auto d : Cn)
    for (auto [p, k] : factorize(d)) primes.insert(p);

  // exponent of p in d
  auto expo = [](std::int64_t d, std::int64_t p) {
    int k = 0;
    while (d % p == 0) {
      d /= p;
      ++k;
    }
    return k;
  };

  for (std::int64_t p : primes) {
    LocalPart part;
    part.p = p;
    for (int j = 0; j < static_cast<int>(Cn.size()); ++j) {
      int k = expo(Cn[j], p);
      if (k) {
        part.coords.push_back(j);
        part.a.push_back(k);
        part.unit.push_back(primary_unit(Cn[j], ipow(p, k)));
      }
    }
    int e = *std::max_element(part.a.begin(), part.a.end());
    std::vector<int> rows_next, b_next;
    if (Cnext)
      for (int i = 0; i < static_cast<int>(Cnext->size()); ++i) {
        int k = expo((*Cnext)[i], p);
        if (k) {
          rows_next.push_back(i);
          b_next.push_back(k);
          e = std::max(e, k);
        }
      }
    part.e = e;
    part.q = ipow(p, e);
    const std::int64_t q = part.q;
    const int J = static_cast<int>(part.coords.size());
    std::vector<int> pos(Cn.size(), -1);
    for (int j = 0; j < J; ++j) pos[part.coords[j]] = j;

    // Kernel generators as columns (stored as vectors of length J).
    std::vector<Vec> gens;
    if (rows_next.empty()) {
      for (int j = 0; j < J; ++j) {
        Vec g(J, 0);
        g[j] = 1;
        gens.push_back(g);
      }
    } else {
      int extra = 0;
      for (int b : b_next) extra += b < e;
      const int cols = J + extra;
      std::vector<Vec> N(rows_next.size(), Vec(cols, 0));
      int xc = J;
      for (std::size_t r = 0; r < rows_next.size(); ++r) {
        const std::int64_t pb = ipow(p, b_next[r]);
        for (auto [j, v] : cx.d[n].row(rows_next[r]))
          if (pos[j] >= 0) N[r][pos[j]] = mulmod(mod(v, pb), part.unit[pos[j]] % pb, pb);
        if (b_next[r] < e) N[r][xc++] = pb;
      }
      LocalSmith s = local_smith(std::move(N), cols, p, e, false, true);
      for (int t = 0; t < cols; ++t) {
        int v = t < static_cast<int>(s.val.size()) ? s.val[t] : e;
        if (v == 0) continue;
        const std::int64_t mult = ipow(p, e - v == e ? 0 : e - v);
        // v == e: unconstrained column
        Vec g(J);
        bool nz = false;
        for (int j = 0; j < J; ++j) {
          g[j] = mulmod(s.V[j][t], v == e ? 1 : mult, q);
          nz = nz || g[j];
        }
        if (nz) gens.push_back(g);
      }
    }
    // Smith form of the generator matrix (J x |gens|).
    std::vector<Vec> G(J, Vec(gens.size(), 0));
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (int j = 0; j < J; ++j) G[j][k] = gens[k][j];
    LocalSmith sg = local_smith(std::move(G), static_cast<int>(gens.size()), p, e, true, false);
    part.U = sg.U;
    part.W = sg.Uinv;
    part.c.assign(J, e);
    for (std::size_t t = 0; t < sg.val.size(); ++t) part.c[t] = sg.val[t];
    for (int j = 0; j < J; ++j)
      if (part.c[j] < e) part.zrows.push_back(j);

    // Images in z coordinates.
    auto to_z = [&](const Vec& y) {
      Vec w(J, 0);
      for (int i = 0; i < J; ++i) {
        __int128 acc = 0;
        for (int j = 0; j < J; ++j)
          if (y[j]) acc += static_cast<__int128>(part.U[i][j]) * y[j];
        w[i] = static_cast<std::int64_t>(acc % q);
      }
      Vec z;
      for (int j = 0; j < J; ++j) {
        const std::int64_t pc = ipow(p, part.c[j]);
        if (part.c[j] == e) {
          if (w[j] != 0) throw DomainError("image is not contained in the kernel");
          continue;
        }
        if (w[j] % pc != 0) throw DomainError("image is not contained in the kernel");
        z.push_back(w[j] / pc);
      }
      return z;
    };
    std::vector<Vec> images;
    if (Cprev) {
      // columns of d[n-1] restricted to p-part sources
      std::vector<Vec> cols_img;
      std::map<int, Vec> by_col;
      for (int i = 0; i < J; ++i) {
        const int row = part.coords[i];
        const std::int64_t pa = ipow(p, part.a[i]);
        for (auto [k, v] : cx.d[n - 1].row(row)) {
          int kk = expo((*Cprev)[k], p);
          if (!kk) continue;
          std::int64_t u = primary_unit((*Cprev)[k], ipow(p, kk));
          auto& col = by_col[k];
          if (col.empty()) col.assign(J, 0);
          col[i] = mulmod(mod(v, pa), u % pa, pa);
        }
      }
      for (auto& [k, col] : by_col) images.push_back(to_z(col));
    }
    for (int j = 0; j < J; ++j)
      if (part.a[j] < e) {
        Vec y(J, 0);
        y[j] = ipow(p, part.a[j]);
        images.push_back(to_z(y));
      }
    const int Z = static_cast<int>(part.zrows.size());
    const int zc = static_cast<int>(images.size()) + Z;
    std::vector<Vec> Zm(Z, Vec(zc, 0));
    for (std::size_t k = 0; k < images.size(); ++k)
      for (int r = 0; r < Z; ++r) Zm[r][k] = images[k][r];
    for (int r = 0; r < Z; ++r) Zm[r][images.size() + r] = mod(ipow(p, e - part.c[part.zrows[r]]), q);
    LocalSmith sz = local_smith(std::move(Zm), zc, p, e, true, false);
    part.U2 = sz.U;
    part.U2inv = sz.Uinv;
    part.v.assign(Z, e);
    for (std::size_t t = 0; t < sz.val.size() && static_cast<int>(t) < Z; ++t) part.v[t] = sz.val[t];
    for (int r = 0; r < Z; ++r)
      if (part.v[r] > 0) part.summands.push_back(r);
    h.parts.push_back(std::move(part));
  }

  // Assemble invariant factors: each prime's largest summands go to the largest factors.
  std::size_t K = 0;
  std::vector<std::vector<int>> order(h.parts.size());
  for (std::size_t pi = 0; pi < h.parts.size(); ++pi) {
    auto& pt = h.parts[pi];
    std::vector<int> idx(pt.summands.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return pt.v[pt.summands[x]] > pt.v[pt.summands[y]]; });
    order[pi] = idx;
    K = std::max(K, idx.size());
  }
  h.factor_parts.assign(K, {});
  h.group.factors.assign(K, 1);
  for (std::size_t pi = 0; pi < h.parts.size(); ++pi)
    for (std::size_t r = 0; r < order[pi].size(); ++r) {
      std::size_t k = K - 1 - r;
      int si = order[pi][r];
      h.factor_parts[k].emplace_back(static_cast<int>(pi), si);
      h.group.factors[k] *= ipow(h.parts[pi].p, h.parts[pi].v[h.parts[pi].summands[si]]);
    }
  return h;
}

Vec Homology::classify(const Vec& x) const {
  // per part, per summand component
  std::vector<Vec> comp(parts.size());
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const LocalPart& pt = parts[pi];
    const int J = static_cast<int>(pt.coords.size());
    const std::int64_t q = pt.q;
    Vec xp(J);
    for (int j = 0; j < J; ++j) xp[j] = mod(x[pt.coords[j]], ipow(pt.p, pt.a[j]));
    Vec z;
    for (int j : pt.zrows) {
      __int128 acc = 0;
      for (int k = 0; k < J; ++k)
        if (xp[k]) acc += static_cast<__int128>(pt.U[j][k]) * xp[k];
      std::int64_t w = static_cast<std::int64_t>(acc % q);
      const std::int64_t pc = ipow(pt.p, pt.c[j]);
      if (w % pc != 0) throw DomainError("not a cocycle");
      z.push_back(w / pc);
    }
    Vec s(pt.summands.size());
    for (std::size_t k = 0; k < pt.summands.size(); ++k) {
      int r = pt.summands[k];
      __int128 acc = 0;
      for (std::size_t t = 0; t < z.size(); ++t)
        if (z[t]) acc += static_cast<__int128>(pt.U2[r][t]) * z[t];
      s[k] = mod(static_cast<std::int64_t>(acc % q), ipow(pt.p, pt.v[r]));
    }
    comp[pi] = s;
  }
  Vec y(group.factors.size(), 0);
  for (std::size_t k = 0; k < group.factors.size(); ++k) {
    const std::int64_t d = group.factors[k];
    std::int64_t acc = 0;
    for (auto [pi, si] : factor_parts[k]) {
      const LocalPart& pt = parts[pi];
      const std::int64_t pv = ipow(pt.p, pt.v[pt.summands[si]]);
      acc = mod(acc + mulmod(comp[pi][si], primary_unit(d, pv), d), d);
    }
    y[k] = acc;
  }
  return y;
}

Vec Homology::representative(const Vec& coords) const {
  Vec x(moduli.size(), 0);
  std::vector<Vec> comp(parts.size());
  for (std::size_t pi = 0; pi < parts.size(); ++pi) comp[pi].assign(parts[pi].summands.size(), 0);
  for (std::size_t k = 0; k < group.factors.size(); ++k)
    for (auto [pi, si] : factor_parts[k]) {
      const LocalPart& pt = parts[pi];
      comp[pi][si] = mod(coords[k], ipow(pt.p, pt.v[pt.summands[si]]));
    }
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const LocalPart& pt = parts[pi];
    const int J = static_cast<int>(pt.coords.size());
    const int Z = static_cast<int>(pt.zrows.size());
    const std::int64_t q = pt.q;
    Vec s(Z, 0);
    for (std::size_t k = 0; k < pt.summands.size(); ++k) s[pt.summands[k]] = comp[pi][k];
    Vec y(J, 0);
    for (int r = 0; r < Z; ++r) {
      __int128 acc = 0;
      for (int t = 0; t < Z; ++t)
        if (s[t]) acc += static_cast<__int128>(pt.U2inv[r][t]) * s[t];
      std::int64_t z = static_cast<std::int64_t>(acc % q);
      if (!z) continue;
      const int col = pt.zrows[r];
      const std::int64_t zc = mulmod(z, ipow(pt.p, pt.c[col]), q);
      for (int j = 0; j < J; ++j) y[j] = mod(y[j] + mulmod(zc, pt.W[j][col], q), q);
    }
    for (int j = 0; j < J; ++j) {
      const int c = pt.coords[j];
      const std::int64_t xp = mod(y[j], ipow(pt.p, pt.a[j]));
      x[c] = mod(x[c] + mulmod(xp, pt.unit[j], moduli[c]), moduli[c]);
    }
  }
  return x;
}

BigInt span_order(const std::vector<Vec>& gens, const Moduli& moduli) {
  std::set<std::int64_t> primes;
  for (auto d : moduli)
    for (auto [p, k] : factorize(d)) primes.insert(p);
  BigInt order = 1;
  for (std::int64_t p : primes) {
    std::vector<int> coords, a;
    for (int j = 0; j < static_cast<int>(moduli.size()); ++j) {
      std::int64_t d = moduli[j];
      int k = 0;
      while (d % p == 0) {
        d /= p;
        ++k;
      }
      if (k) {
        coords.push_back(j);
        a.push_back(k);
      }
    }
    const int e = *std::max_element(a.begin(), a.end());
    const int J = static_cast<int>(coords.size());
    int extra = 0;
    for (int k : a) extra += k < e;
    const int cols = static_cast<int>(gens.size()) + extra;
    std::vector<Vec> M(J, Vec(cols, 0));
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (int j = 0; j < J; ++j) M[j][g] = mod(gens[g][coords[j]], ipow(p, a[j]));
    int xc = static_cast<int>(gens.size());
    for (int j = 0; j < J; ++j)
      if (a[j] < e) M[j][xc++] = ipow(p, a[j]);
    LocalSmith s = local_smith(std::move(M), cols, p, e, false, false);
    int total = 0, coker = 0;
    for (int k : a) total += k;
    for (int t = 0; t < J; ++t) coker += t < static_cast<int>(s.val.size()) ? s.val[t] : e;
    for (int t = 0; t < total - coker; ++t) order *= p;
  }
  return order;
}

}  // namespace dgc

namespace dgc {

std::optional<Vec> solve(const SparseMatrix& a, const Moduli& src, const Moduli& dst, const Vec& b) {
  Vec x(src.size(), 0);
  std::set<std::int64_t> primes;
  for (auto d : dst)
    for (auto [p, k] : factorize(d)) primes.insert(p);
  auto expo = [](std::int64_t d, std::int64_t p) {
    int k = 0;
    while (d % p == 0) {
      d /= p;
      ++k;
    }
    return k;
  };
  for (std::int64_t p : primes) {
    std::vector<int> rows, bexp, cols, aexp;
    int e = 0;
    for (int i = 0; i < static_cast<int>(dst.size()); ++i)
      if (int k = expo(dst[i], p)) {
        rows.push_back(i);
        bexp.push_back(k);
        e = std::max(e, k);
      }
    std::vector<long> pos(src.size(), -1);
    for (int j = 0; j < static_cast<int>(src.size()); ++j)
      if (int k = expo(src[j], p)) {
        pos[j] = static_cast<long>(cols.size());
        cols.push_back(j);
        aexp.push_back(k);
        e = std::max(e, k);
      }
    const std::int64_t q = ipow(p, e);
    const int J = static_cast<int>(cols.size());
    int extra = 0;
    for (int k : bexp) extra += k < e;
    const int C = J + extra;
    std::vector<Vec> N(rows.size(), Vec(C, 0));
    Vec rhs(rows.size());
    std::vector<std::int64_t> units(J);
    for (int j = 0; j < J; ++j) units[j] = primary_unit(src[cols[j]], ipow(p, aexp[j]));
    int xc = J;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::int64_t pb = ipow(p, bexp[r]);
      for (auto [j, v] : a.row(rows[r]))
        if (pos[j] >= 0) N[r][pos[j]] = mulmod(mod(v, pb), units[pos[j]] % pb, pb);
      if (bexp[r] < e) N[r][xc++] = pb;
      rhs[r] = mod(b[rows[r]], pb);
    }
    const int R = static_cast<int>(rows.size());
    LocalSmith s = local_smith(std::move(N), C, p, e, true, true);
    Vec ub(R, 0);
    for (int i = 0; i < R; ++i) {
      __int128 acc = 0;
      for (int k = 0; k < R; ++k) acc += static_cast<__int128>(s.U[i][k]) * rhs[k];
      ub[i] = static_cast<std::int64_t>(acc % q);
    }
    Vec y(C, 0);
    for (int i = 0; i < R; ++i) {
      const int v = i < static_cast<int>(s.val.size()) ? s.val[i] : e;
      if (v == e) {
        if (ub[i] != 0) return std::nullopt;
        continue;
      }
      const std::int64_t pv = ipow(p, v);
      if (ub[i] % pv != 0) return std::nullopt;
      y[i] = ub[i] / pv;
    }
    for (int j = 0; j < J; ++j) {
      __int128 acc = 0;
      for (int t = 0; t < C; ++t) acc += static_cast<__int128>(s.V[j][t]) * y[t];
      const std::int64_t xp = mod(static_cast<std::int64_t>(acc % q), ipow(p, aexp[j]));
      const std::int64_t d = src[cols[j]];
      x[cols[j]] = mod(x[cols[j]] + mulmod(xp, units[j], d), d);
    }
  }
  // primes of the source that do not divide any target modulus are unconstrained
  return x;
}

}  // namespace dgc
