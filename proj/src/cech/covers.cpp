#include <algorithm>
#include <bit>

#include "dgc/cech.hpp"

namespace dgc {

// ---- index combinatorics ---------------------------------------------------------

std::vector<int> subset_elements(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

std::vector<unsigned> ordered_subsets(int m) {
  std::vector<unsigned> out;
  for (unsigned s = 1; s < (1u << (m + 1)); ++s) out.push_back(s);
  std::sort(out.begin(), out.end(), [](unsigned a, unsigned b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return subset_elements(a) < subset_elements(b);
  });
  return out;
}

std::vector<std::pair<unsigned, unsigned>> lexy_pairs(int m, int n) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned S : ordered_subsets(m))
    for (unsigned T : ordered_subsets(n)) out.emplace_back(S, T);
  return out;
}

std::size_t p_count(int m, int n) { return lexy_pairs(m, n).size(); }

std::pair<std::size_t, std::size_t> lambda_matrix_shape(int m, int n) {
  return {ordered_subsets(m).size(), ordered_subsets(n).size()};
}

// ---- raw covers ------------------------------------------------------------------

std::vector<std::vector<std::size_t>> raw_level_sets(const RawCover& raw, Nerve& nerve, int m, int n) {
  const std::size_t N = nerve.level(m, n).size();
  std::vector<std::vector<std::size_t>> sets;
  auto it = raw.levels.find({m, n});
  if (it != raw.levels.end()) {
    sets = it->second;
  } else if (raw.fill == RawCover::Fill::Whole) {
    sets.emplace_back();
    for (std::size_t x = 0; x < N; ++x) sets[0].push_back(x);
  } else {
    for (std::size_t x = 0; x < N; ++x) sets.push_back({x});
  }
  std::vector<bool> seen(N, false);
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto x : s) {
      if (x >= N) throw DomainError("cover of level (" + std::to_string(m) + "," + std::to_string(n) +
                                    ") names a missing cell");
      seen[x] = true;
    }
  }
  for (std::size_t x = 0; x < N; ++x)
    if (!seen[x])
      throw DomainError("not a cover of level (" + std::to_string(m) + "," + std::to_string(n) + "): cell " +
                        std::to_string(x) + " is in no set");
  return sets;
}

// ---- base class ------------------------------------------------------------------

BisimplicialCover::BisimplicialCover(const DoubleGroupoid& dg, std::size_t cap)
    : cap_(cap), dg_(dg), nerve_(dg, cap) {}

const BisimplicialCover::LevelData& BisimplicialCover::level(int m, int n) {
  auto key = std::make_pair(m, n);
  auto it = levels_.find(key);
  if (it != levels_.end()) return it->second;
  return levels_.emplace(key, build(m, n)).first->second;
}

long BisimplicialCover::member_index(int m, int n, const CoverKey& key) {
  const auto& L = level(m, n);
  auto it = L.index.find(key);
  return it == L.index.end() ? -1 : static_cast<long>(it->second);
}

bool BisimplicialCover::contains(int m, int n, std::size_t member, std::size_t cell) {
  const auto& c = level(m, n).members[member].cells;
  return std::binary_search(c.begin(), c.end(), cell);
}

namespace {

using Members = std::map<CoverKey, std::vector<std::size_t>>;

BisimplicialCover::LevelData finish(Members&& mem) {
  BisimplicialCover::LevelData out;
  for (auto& [k, cells] : mem) {
    out.index[k] = out.members.size();
    out.members.push_back({k, std::move(cells)});
  }
  return out;
}

// Cartesian product of option lists, one key per choice.
template <class Fn>
void product(const std::vector<const std::vector<Id>*>& opts, std::size_t& budget, std::size_t cap, Fn&& fn) {
  std::size_t total = 1;
  for (auto* o : opts) {
    if (o->empty()) return;
    total *= o->size();
    if (total > cap) throw ResourceError("cover index enumeration exceeds the cap");
  }
  if (total > budget) throw ResourceError("cover index enumeration exceeds the cap");
  budget -= total;
  CoverKey key(opts.size());
  std::vector<std::size_t> pos(opts.size(), 0);
  for (std::size_t i = 0; i < opts.size(); ++i) key[i] = (*opts[i])[0];
  while (true) {
    fn(key);
    std::size_t i = 0;
    for (; i < opts.size(); ++i) {
      if (++pos[i] < opts[i]->size()) {
        key[i] = (*opts[i])[pos[i]];
        break;
      }
      pos[i] = 0;
      key[i] = (*opts[i])[0];
    }
    if (i == opts.size()) break;
  }
}

// Removes bit k and shifts the higher bits down.
unsigned squeeze(unsigned mask, int k) {
  const unsigned low = mask & ((1u << k) - 1);
  return low | ((mask >> (k + 1)) << k);
}

// Inserts a zero bit at position k.
unsigned spread(unsigned mask, int k) {
  const unsigned low = mask & ((1u << k) - 1);
  return low | ((mask >> k) << (k + 1));
}

// ---- Lambda covers ------------------------------------------------------------------

class LambdaCover : public BisimplicialCover {
 public:
  LambdaCover(const DoubleGroupoid& dg, RawCover raw, std::size_t cap, std::string kind)
      : BisimplicialCover(dg, cap), raw_(std::move(raw)), kind_(std::move(kind)) {}

  std::string kind() const override { return kind_; }
  const RawCover& raw() const { return raw_; }

  CoverKey face(int m, int n, const CoverKey& key, Dir dir, int k) override {
    const int fm = dir == Dir::Vertical ? m - 1 : m;
    const int fn = dir == Dir::Vertical ? n : n - 1;
    const auto& P = pairs(fm, fn);
    CoverKey out(P.size());
    for (std::size_t p = 0; p < P.size(); ++p) {
      auto [S, T] = P[p];
      if (dir == Dir::Vertical)
        S = spread(S, k);
      else
        T = spread(T, k);
      out[p] = key[position(m, n, S, T)];
    }
    return out;
  }

  CoverKey canonical(int m, int n, std::size_t cell) override {
    const auto& R = restrictions(m, n)[cell];
    const auto& P = pairs(m, n);
    CoverKey key(P.size());
    for (std::size_t p = 0; p < P.size(); ++p) {
      auto [S, T] = P[p];
      key[p] = options(std::popcount(S) - 1, std::popcount(T) - 1)[R[p]][0];
    }
    return key;
  }

  std::optional<CoverKey> fill(int m, int n, std::size_t cell, Dir dir, const std::vector<CoverKey>& faces) override {
    const int top = dir == Dir::Vertical ? m : n;
    if (top < 1 || static_cast<int>(faces.size()) != top + 1) throw DomainError("fill needs one key per face");
    const int fm = dir == Dir::Vertical ? m - 1 : m;
    const int fn = dir == Dir::Vertical ? n : n - 1;
    const auto& R = restrictions(m, n)[cell];
    const auto& P = pairs(m, n);
    const unsigned full = (1u << (top + 1)) - 1;
    CoverKey key(P.size());
    for (std::size_t p = 0; p < P.size(); ++p) {
      auto [S, T] = P[p];
      const unsigned D = dir == Dir::Vertical ? S : T;
      const int k0 = std::popcount(S) - 1, l0 = std::popcount(T) - 1;
      const auto& opt = options(k0, l0)[R[p]];
      if (D == full) {
        key[p] = opt[0];
        continue;
      }
      std::optional<Id> v;
      for (int k = 0; k <= top; ++k) {
        if (D >> k & 1u) continue;
        const unsigned Sq = dir == Dir::Vertical ? squeeze(S, k) : S;
        const unsigned Tq = dir == Dir::Vertical ? T : squeeze(T, k);
        const Id e = faces[k][position(fm, fn, Sq, Tq)];
        if (v && *v != e) return std::nullopt;
        v = e;
      }
      if (!std::binary_search(opt.begin(), opt.end(), *v)) return std::nullopt;
      key[p] = *v;
    }
    return key;
  }

 protected:
  LevelData build(int m, int n) override {
    const auto& R = restrictions(m, n);
    const auto& P = pairs(m, n);
    Members mem;
    std::size_t budget = cap_;
    std::vector<const std::vector<Id>*> opts(P.size());
    for (std::size_t x = 0; x < R.size(); ++x) {
      for (std::size_t p = 0; p < P.size(); ++p)
        opts[p] = &options(std::popcount(P[p].first) - 1, std::popcount(P[p].second) - 1)[R[x][p]];
      product(opts, budget, cap_, [&](const CoverKey& key) { mem[key].push_back(x); });
    }
    return finish(std::move(mem));
  }

 private:
  const std::vector<std::pair<unsigned, unsigned>>& pairs(int m, int n) {
    auto key = std::make_pair(m, n);
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return it->second;
    auto P = lexy_pairs(m, n);
    std::vector<long> pos(static_cast<std::size_t>(1u << (m + 1)) << (n + 1), -1);
    for (std::size_t p = 0; p < P.size(); ++p) pos[(static_cast<std::size_t>(P[p].first) << (n + 1)) | P[p].second] = static_cast<long>(p);
    positions_[key] = std::move(pos);
    return pairs_.emplace(key, std::move(P)).first->second;
  }

  std::size_t position(int m, int n, unsigned S, unsigned T) {
    pairs(m, n);
    return static_cast<std::size_t>(positions_.at({m, n})[(static_cast<std::size_t>(S) << (n + 1)) | T]);
  }

  // options[cell] = sorted raw set indices containing the cell.
  const std::vector<std::vector<Id>>& options(int m, int n) {
    auto key = std::make_pair(m, n);
    auto it = options_.find(key);
    if (it != options_.end()) return it->second;
    auto sets = raw_level_sets(raw_, nerve(), m, n);
    std::vector<std::vector<Id>> opt(nerve().level(m, n).size());
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (auto x : sets[i]) opt[x].push_back(static_cast<Id>(i));
    return options_.emplace(key, std::move(opt)).first->second;
  }

  // restrictions[cell][p] = index of the restriction along the p-th pair.
  const std::vector<std::vector<std::size_t>>& restrictions(int m, int n) {
    auto key = std::make_pair(m, n);
    auto it = restr_.find(key);
    if (it != restr_.end()) return it->second;
    const auto& P = pairs(m, n);
    const Level& L = nerve().level(m, n);
    std::vector<std::vector<std::size_t>> out(L.size(), std::vector<std::size_t>(P.size()));
    for (std::size_t x = 0; x < L.size(); ++x) {
      Cell c = L.cell(x);
      for (std::size_t p = 0; p < P.size(); ++p) {
        Cell f = restrict_cell(dg(), c, subset_elements(P[p].first), subset_elements(P[p].second));
        long idx = nerve().level(f.m, f.n).index(f);
        if (idx < 0) throw DomainError("restriction is not a cell");
        out[x][p] = static_cast<std::size_t>(idx);
      }
    }
    return restr_.emplace(key, std::move(out)).first->second;
  }

  RawCover raw_;
  std::string kind_;
  std::map<std::pair<int, int>, std::vector<std::pair<unsigned, unsigned>>> pairs_;
  std::map<std::pair<int, int>, std::vector<long>> positions_;
  std::map<std::pair<int, int>, std::vector<std::vector<Id>>> options_;
  std::map<std::pair<int, int>, std::vector<std::vector<std::size_t>>> restr_;
};

// ---- vertex covers -----------------------------------------------------------------

class VertexCover : public BisimplicialCover {
 public:
  VertexCover(const DoubleGroupoid& dg, Cover points, std::size_t cap)
      : BisimplicialCover(dg, cap), points_(normalize_cover(std::move(points))) {
    if (points_.carrier != dg.points) throw DomainError("cover carrier differs from the point set");
    opts_.resize(dg.points);
    for (std::size_t i = 0; i < points_.sets.size(); ++i)
      for (Id x : points_.sets[i]) opts_[x].push_back(static_cast<Id>(i));
  }

  std::string kind() const override { return "vertex"; }

  CoverKey face(int m, int n, const CoverKey& key, Dir dir, int k) override {
    CoverKey out;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= n; ++b) {
        if ((dir == Dir::Vertical && a == k) || (dir == Dir::Horizontal && b == k)) continue;
        out.push_back(key[static_cast<std::size_t>(a) * (n + 1) + b]);
      }
    return out;
  }

  CoverKey canonical(int m, int n, std::size_t cell) override {
    Cell c = nerve().level(m, n).cell(cell);
    CoverKey key;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= n; ++b) key.push_back(opts_[grid_point(dg(), c, a, b)][0]);
    return key;
  }

  std::optional<CoverKey> fill(int m, int n, std::size_t cell, Dir dir, const std::vector<CoverKey>& faces) override {
    const int top = dir == Dir::Vertical ? m : n;
    if (top < 1 || static_cast<int>(faces.size()) != top + 1) throw DomainError("fill needs one key per face");
    Cell c = nerve().level(m, n).cell(cell);
    const int fw = dir == Dir::Vertical ? n + 1 : n;  // face row width
    CoverKey key;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= n; ++b) {
        const int d = dir == Dir::Vertical ? a : b;
        std::optional<Id> v;
        for (int k = 0; k <= top; ++k) {
          if (k == d) continue;
          const int fa = dir == Dir::Vertical ? (a < k ? a : a - 1) : a;
          const int fb = dir == Dir::Vertical ? b : (b < k ? b : b - 1);
          const Id e = faces[k][static_cast<std::size_t>(fa) * fw + fb];
          if (v && *v != e) return std::nullopt;
          v = e;
        }
        if (!cover_contains(points_, static_cast<std::size_t>(*v), grid_point(dg(), c, a, b))) return std::nullopt;
        key.push_back(*v);
      }
    return key;
  }

 protected:
  LevelData build(int m, int n) override {
    const Level& L = nerve().level(m, n);
    Members mem;
    std::size_t budget = cap_;
    std::vector<const std::vector<Id>*> opts;
    for (std::size_t x = 0; x < L.size(); ++x) {
      Cell c = L.cell(x);
      opts.clear();
      for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= n; ++b) opts.push_back(&opts_[grid_point(dg(), c, a, b)]);
      product(opts, budget, cap_, [&](const CoverKey& key) { mem[key].push_back(x); });
    }
    return finish(std::move(mem));
  }

 private:
  Cover points_;
  std::vector<std::vector<Id>> opts_;
};

}  // namespace

std::unique_ptr<BisimplicialCover> bisimplicial_refinement(const DoubleGroupoid& dg, RawCover raw, std::size_t cap) {
  return std::make_unique<LambdaCover>(dg, std::move(raw), cap, "refinement");
}

std::unique_ptr<BisimplicialCover> finest_cover(const DoubleGroupoid& dg, std::size_t cap) {
  RawCover raw;
  raw.fill = RawCover::Fill::Singletons;
  return std::make_unique<LambdaCover>(dg, std::move(raw), cap, "finest");
}

std::unique_ptr<BisimplicialCover> vertex_cover(const DoubleGroupoid& dg, const Cover& points, std::size_t cap) {
  return std::make_unique<VertexCover>(dg, points, cap);
}

const RawCover* raw_cover(const BisimplicialCover& c) {
  auto* l = dynamic_cast<const LambdaCover*>(&c);
  return l ? &l->raw() : nullptr;
}

ValidationReport check_bisimplicial(BisimplicialCover& c, int max_m, int max_n) {
  ValidationReport rep;
  const DoubleGroupoid& dg = c.dg();
  for (int m = 0; m <= max_m; ++m)
    for (int n = 0; n <= max_n; ++n) {
      const auto& L = c.level(m, n);
      const Level& cells = c.nerve().level(m, n);
      const std::string at = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
      for (int d = 0; d < 2; ++d) {
        const Dir dir = d == 0 ? Dir::Vertical : Dir::Horizontal;
        const int top = dir == Dir::Vertical ? m : n;
        if (top < 1) continue;
        const int fm = dir == Dir::Vertical ? m - 1 : m;
        const int fn = dir == Dir::Vertical ? n : n - 1;
        const Level& fcells = c.nerve().level(fm, fn);
        for (int k = 0; k <= top; ++k) {
          for (std::size_t u = 0; u < L.members.size(); ++u) {
            CoverKey fk = c.face(m, n, L.members[u].key, dir, k);
            long fu = c.member_index(fm, fn, fk);
            if (fu < 0) {
              rep.add("bisimplicial", at + " face of a member is not a member");
              continue;
            }
            for (auto x : L.members[u].cells) {
              long fx = fcells.index(face(dg, cells.cell(x), dir, k));
              if (fx < 0 || !c.contains(fm, fn, static_cast<std::size_t>(fu), static_cast<std::size_t>(fx)))
                rep.add("bisimplicial", at + " face of a cell leaves the face member");
            }
          }
          for (std::size_t x = 0; x < cells.size(); ++x) {
            long fx = fcells.index(face(dg, cells.cell(x), dir, k));
            if (c.face(m, n, c.canonical(m, n, x), dir, k) != c.canonical(fm, fn, static_cast<std::size_t>(fx)))
              rep.add("canonical", at + " canonical members do not commute with faces");
          }
        }
      }
    }
  return rep;
}

ValidationReport check_refines_raw(BisimplicialCover& c, int max_m, int max_n) {
  ValidationReport rep;
  const RawCover* raw = raw_cover(c);
  if (!raw) {
    rep.add("refines", "not a refinement cover", true);
    return rep;
  }
  for (int m = 0; m <= max_m; ++m)
    for (int n = 0; n <= max_n; ++n) {
      auto sets = raw_level_sets(*raw, c.nerve(), m, n);
      for (const auto& mem : c.level(m, n).members) {
        const auto& U = sets[mem.key.back()];
        if (!std::includes(U.begin(), U.end(), mem.cells.begin(), mem.cells.end()))
          rep.add("refines", "(" + std::to_string(m) + "," + std::to_string(n) + ") member not inside U_theta");
      }
    }
  return rep;
}

}  // namespace dgc
