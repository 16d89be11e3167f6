#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgc/core.hpp"
#include "dgc/linalg.hpp"
#include "dgc/nerve.hpp"

namespace dgc {

// Degenerate: cochains vanish on degenerate cells. None: all cells are free.
enum class Normalization { Degenerate, None };

// Items indexing a bicomplex: cells of some double groupoid, possibly decorated.
class CellSource {
 public:
  virtual ~CellSource() = default;
  virtual const DoubleGroupoid& dg() const = 0;
  virtual std::size_t count(int m, int n) = 0;
  // Underlying cell of dg; fixes the fiber and the face twists.
  virtual Cell cell(int m, int n, std::size_t i) = 0;
  virtual long face_index(int m, int n, std::size_t i, Dir dir, int k) = 0;
  virtual bool pinned(int m, int n, std::size_t i) = 0;
};

class NerveSource : public CellSource {
 public:
  NerveSource(const DoubleGroupoid& dg, Normalization norm, std::size_t cap = kDefaultMaxCells)
      : nerve_(dg, cap), norm_(norm) {}
  const DoubleGroupoid& dg() const override { return nerve_.dg(); }
  std::size_t count(int m, int n) override { return nerve_.level(m, n).size(); }
  Cell cell(int m, int n, std::size_t i) override { return nerve_.level(m, n).cell(i); }
  long face_index(int m, int n, std::size_t i, Dir dir, int k) override;
  bool pinned(int m, int n, std::size_t i) override;
  Nerve& nerve() { return nerve_; }
  Normalization normalization() const { return norm_; }

 private:
  Nerve nerve_;
  Normalization norm_;
};

// D^{r,s} as a direct sum of cyclic groups: each free item contributes the
// invariant factors of its basepoint fiber.
struct CochainSpace {
  int r = 0, s = 0;
  std::vector<long> offset;       // per item, -1 when pinned
  std::vector<Id> base;           // per item
  std::vector<std::size_t> owner; // per coordinate
  Moduli moduli;

  std::size_t items() const { return offset.size(); }
  std::size_t dim() const { return moduli.size(); }
};

// Cochain values per item (element of the basepoint fiber; 0 on pinned items).
struct Cochain {
  int r = 0, s = 0;
  std::vector<Elem> values;
};

class Bicomplex {
 public:
  Bicomplex(CellSource& src, const DoubleAction& action);

  CellSource& source() { return src_; }
  const DoubleAction& action() const { return act_; }
  const CochainSpace& space(int r, int s);
  // D^{r,s} -> D^{r,s+1}
  const SparseMatrix& d_h(int r, int s);
  // D^{r,s} -> D^{r+1,s}
  const SparseMatrix& d_v(int r, int s);

  Vec to_coords(const Cochain& c);
  Cochain from_coords(int r, int s, const Vec& x);

 private:
  const std::vector<std::vector<std::int64_t>>& twist(Dir dir, Id arrow);
  SparseMatrix build(int r, int s, Dir dir);

  CellSource& src_;
  const DoubleAction& act_;
  std::map<std::pair<int, int>, CochainSpace> spaces_;
  std::map<std::pair<int, int>, SparseMatrix> dh_, dv_;
  std::map<std::pair<int, Id>, std::vector<std::vector<std::int64_t>>> twists_;
};

Cochain coboundary_h(Bicomplex& bc, const Cochain& a);
Cochain coboundary_v(Bicomplex& bc, const Cochain& a);

// ---- total complexes ---------------------------------------------------------

struct Block {
  int r = 0, s = 0;  // D bidegree
  std::size_t offset = 0;
};

struct TotalComplex {
  CochainComplex cx;
  std::vector<std::vector<Block>> blocks;  // per degree

  const Block* find(int n, int r, int s) const;
};

// Tot(A)^n = (+) A^{p,q}, p+q = n, A^{p,q} = D^{p+1,q+1}; d = d_H + (-1)^q d_V.
// Degrees 0..nmax+1; blocks ordered by p descending.
TotalComplex total_complex(Bicomplex& bc, int nmax);
// Tot(D) with d = d_H + (-1)^s d_V, degrees 0..nmax+1.
TotalComplex total_d(Bicomplex& bc, int nmax);
// Subcomplex of Tot(D) with r,s >= 1, and the quotient by it.
TotalComplex interior(Bicomplex& bc, int nmax);
TotalComplex edges(Bicomplex& bc, int nmax);

CochainSpace cochain_group(const DoubleGroupoid& dg, const DoubleAction& action, int r, int s,
                           std::size_t cap = kDefaultMaxCells);
FinAbGroup h_total(const DoubleGroupoid& dg, const DoubleAction& action, int n,
                   std::size_t cap = kDefaultMaxCells);

// ---- groupoid cohomology -----------------------------------------------------

// Left action along a groupoid: act[g] : K_{dst g} -> K_{src g}.
struct GroupoidAction {
  AbelianGroupBundle bundle;
  std::vector<std::vector<Elem>> act;
};
GroupoidAction vertical_part(const DoubleAction& a);
GroupoidAction horizontal_part(const DoubleAction& a);

// Normalized bar complex of composable strings, basepoint src(g1).
CochainComplex groupoid_cochains(const FiniteGroupoid& g, const GroupoidAction& a, int nmax,
                                 std::size_t cap = kDefaultMaxCells);
FinAbGroup groupoid_cohomology(const FiniteGroupoid& g, const GroupoidAction& a, int n,
                               std::size_t cap = kDefaultMaxCells);

// ---- long exact sequence -------------------------------------------------------

struct LesNode {
  std::string label;  // e.g. "H^2(I)"
  FinAbGroup group;
  bool exact = false;
};

struct LesReport {
  std::vector<LesNode> nodes;
  // H^n(I) against H^{n-2}_Tot, and H^n(E) against H^n(H) + H^n(V) for n >= 2.
  std::vector<std::string> comparisons;
  bool comparisons_ok = true;
  bool exact() const;
};

LesReport verify_long_exact_sequence(const DoubleGroupoid& dg, const DoubleAction& action, int nmax,
                                     std::size_t cap = kDefaultMaxCells);

// ---- degree one --------------------------------------------------------------

// sigma on (2,1) cells, tau on (1,2) cells, values in the basepoint fibers.
struct TotalCocycle {
  std::vector<Elem> sigma, tau;
};

// Everything needed to move between cocycles, coordinates and classes in degree 1.
class CohomologyContext {
 public:
  CohomologyContext(const DoubleGroupoid& dg, const DoubleAction& action,
                    Normalization norm = Normalization::Degenerate, std::size_t cap = kDefaultMaxCells);

  const DoubleGroupoid& dg() const { return dg_; }
  const DoubleAction& action() const { return act_; }
  NerveSource& source() { return *src_; }
  Bicomplex& bicomplex() { return *bc_; }
  const TotalComplex& total() const { return tot_; }
  // Computed on first use.
  const Homology& h1();
  const Homology& h0();
  const Level& level(int m, int n) { return src_->nerve().level(m, n); }

  Vec coords(const TotalCocycle& z);
  TotalCocycle cocycle(const Vec& x);
  bool closed(const TotalCocycle& z);
  // Satisfies the normalization of this context (always true when unnormalized).
  bool normalized(const TotalCocycle& z);
  TotalCocycle coboundary(const Vec& mu);  // d^0 of a D^{1,1} coordinate vector
  Elem classify(const TotalCocycle& z) { return h1().classify_elem(coords(z)); }
  TotalCocycle representative(Elem cls) { return cocycle(h1().representative_elem(cls)); }

 private:
  const DoubleGroupoid& dg_;
  const DoubleAction& act_;
  std::unique_ptr<NerveSource> src_;
  std::unique_ptr<Bicomplex> bc_;
  TotalComplex tot_;
  std::optional<Homology> h0_, h1_;
};

// Cohomologous normalized cocycle: subtracts d^0 of mu with
// mu(idd_h x) = sigma(idd_h x / idd_h x), mu(idd_v g) = tau(idd_v g, idd_v g).
// Input values are on all cells (unnormalized indexing).
TotalCocycle normalize_cocycle(const DoubleGroupoid& dg, const DoubleAction& action, const TotalCocycle& z,
                               Vec* mu_out = nullptr);

}  // namespace dgc
