#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "dgc/core.hpp"

namespace dgc {

enum class Dir { Vertical, Horizontal };

// Entries: (0,0) one point; (0,n) H arrows left to right; (m,0) V arrows top
// to bottom; otherwise m x n boxes row-major, row 0 on top.
struct Cell {
  int m = 0, n = 0;
  std::vector<Id> e;

  Id at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }
  bool operator==(const Cell& o) const { return m == o.m && n == o.n && e == o.e; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
};

struct IdVecHash {
  std::size_t operator()(const std::vector<Id>& v) const {
    std::size_t h = v.size();
    for (Id x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Grid view: vertex (i,j) for 0<=i<=m, 0<=j<=n.
Id grid_point(const DoubleGroupoid& dg, const Cell& c, int i, int j);
// H arrow on grid row i between columns j and j+1.
Id grid_hedge(const DoubleGroupoid& dg, const Cell& c, int i, int j);
// V arrow on grid column j between rows i and i+1.
Id grid_vedge(const DoubleGroupoid& dg, const Cell& c, int i, int j);
// Composite H arrow along grid row i from column j0 to j1 (identity if equal).
Id grid_hpath(const DoubleGroupoid& dg, const Cell& c, int i, int j0, int j1);
Id grid_vpath(const DoubleGroupoid& dg, const Cell& c, int j, int i0, int i1);
// Composite box of rows i0..i1-1 and columns j0..j1-1 (both ranges nonempty).
Id grid_block(const DoubleGroupoid& dg, const Cell& c, int i0, int i1, int j0, int j1);

// Bottom-left vertex; the fiber where cochain values live.
inline Id basepoint(const DoubleGroupoid& dg, const Cell& c) { return grid_point(dg, c, c.m, 0); }

bool is_cell(const DoubleGroupoid& dg, const Cell& c);

// Restriction along sorted nonempty subsets of grid rows S and columns T.
Cell restrict_cell(const DoubleGroupoid& dg, const Cell& c, const std::vector<int>& S, const std::vector<int>& T);
Cell face(const DoubleGroupoid& dg, const Cell& c, Dir dir, int k);
Cell degeneracy(const DoubleGroupoid& dg, const Cell& c, Dir dir, int k);
// In the image of some degeneracy.
bool is_degenerate(const DoubleGroupoid& dg, const Cell& c);

// All cells of bidegree (m,n) in lexicographic order of entries.
class Level {
 public:
  int m = 0, n = 0;

  std::size_t size() const { return count_; }
  Cell cell(std::size_t i) const;
  const Id* entries(std::size_t i) const { return data_.data() + i * width_; }
  // -1 if absent.
  long index(const Cell& c) const;

  friend Level enumerate_level(const DoubleGroupoid&, int, int, std::size_t);

 private:
  std::size_t width_ = 1, count_ = 0;
  std::vector<Id> data_;
  std::unordered_map<std::vector<Id>, std::size_t, IdVecHash> index_;
};

constexpr std::size_t kDefaultMaxCells = 1000000;

// Throws ResourceError past the cap.
Level enumerate_level(const DoubleGroupoid& dg, int m, int n, std::size_t cap = kDefaultMaxCells);
std::vector<Cell> nerve_cells(const DoubleGroupoid& dg, int m, int n, std::size_t cap = kDefaultMaxCells);

// Lazily enumerated levels of one double groupoid.
class Nerve {
 public:
  explicit Nerve(const DoubleGroupoid& dg, std::size_t cap = kDefaultMaxCells) : dg_(dg), cap_(cap) {}
  const DoubleGroupoid& dg() const { return dg_; }
  const Level& level(int m, int n);

 private:
  const DoubleGroupoid& dg_;
  std::size_t cap_;
  std::map<std::pair<int, int>, std::unique_ptr<Level>> levels_;
};

// ---- core orbits -------------------------------------------------------------

// (m+1) x (n+1) boxes, row-major; rows share left sides, columns share bottoms.
struct CornerMatrix {
  int m = 0, n = 0;
  std::vector<Id> e;

  Id at(int i, int j) const { return e[static_cast<std::size_t>(i) * (n + 1) + j]; }
  bool operator==(const CornerMatrix& o) const { return m == o.m && n == o.n && e == o.e; }
};

bool is_corner_matrix(const DoubleGroupoid& dg, const CornerMatrix& f);
inline Id corner_gamma(const DoubleGroupoid& dg, const CornerMatrix& f) { return dg.bl(f.at(f.m, 0)); }
// Entrywise core action; requires tr(e) = gamma(f).
CornerMatrix core_translate(const DoubleGroupoid& dg, Id e, const CornerMatrix& f);
// Bottom row horizontally thin, left column vertically thin.
bool is_normal_corner(const DoubleGroupoid& dg, const CornerMatrix& f);

// Staircase composites with identity padding; a representative of the orbit.
CornerMatrix phi(const DoubleGroupoid& dg, const Cell& c);
Cell psi(const DoubleGroupoid& dg, const CornerMatrix& f);

std::vector<CornerMatrix> corner_matrices(const DoubleGroupoid& dg, int m, int n,
                                          std::size_t cap = kDefaultMaxCells);

struct OrbitCensus {
  std::size_t matrices = 0;
  std::size_t orbits = 0;
  std::size_t normal_orbits = 0;      // orbits containing a normal matrix
  std::size_t max_normal_per_orbit = 0;
  bool psi_invariant = true;          // psi constant on every orbit
};

// Union-find over all corner matrices under the core action.
OrbitCensus core_orbits(const DoubleGroupoid& dg, int m, int n, std::size_t cap = kDefaultMaxCells);

}  // namespace dgc
