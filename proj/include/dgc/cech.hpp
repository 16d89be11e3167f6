#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgc/cohomology.hpp"
#include "dgc/core.hpp"
#include "dgc/extensions.hpp"
#include "dgc/linalg.hpp"
#include "dgc/nerve.hpp"

namespace dgc {

// ---- covers of a finite set ----------------------------------------------------

struct Cover {
  int carrier = 0;
  std::vector<std::vector<Id>> sets;  // sorted, duplicates removed by normalize_cover
};

// Sorts the sets; throws DomainError when an element is out of range or uncovered.
Cover normalize_cover(Cover c);
Cover singleton_cover(int carrier);
Cover whole_cover(int carrier);
bool cover_contains(const Cover& c, std::size_t set, Id x);
// theta[j] = least i with fine_j inside coarse_i, or nullopt when fine does not refine coarse.
std::optional<std::vector<Id>> refinement_map(const Cover& coarse, const Cover& fine);

// ---- Cech groupoids ----------------------------------------------------------------

struct CechGroupoid {
  FiniteGroupoid g;
  std::vector<std::array<Id, 2>> objects;  // (i, x)
  std::vector<std::array<Id, 3>> arrows;   // (i, g, j): src g in U_i, dst g in U_j
};

CechGroupoid cech_groupoid(const FiniteGroupoid& g, const Cover& cover);

struct CechDoubleGroupoid {
  DoubleGroupoid dg;
  CechGroupoid V, H;
  std::vector<std::array<Id, 5>> boxes;  // (i, j, k, l, B): tl in U_i, tr in U_j, br in U_k, bl in U_l
  std::vector<Id> point_base;            // point of dg -> underlying point
};

CechDoubleGroupoid cech_double_groupoid(const DoubleGroupoid& dg, const Cover& cover);
// K[U]: fiber over (i,x) is K_x, arrows act through their underlying arrow.
DoubleAction pullback_action(const CechDoubleGroupoid& c, const DoubleAction& a);
// Forgets the labels: box (i,j,k,l,B) -> B. Checks that it is a bijection onto
// dg's boxes commuting with every structure map; only possible for one-set covers.
bool is_forgetful_isomorphism(const CechDoubleGroupoid& c, const DoubleGroupoid& dg);

// ---- index combinatorics ----------------------------------------------------------

// Nonempty subsets of [m] (bitmasks) ordered by size, then lexicographically.
std::vector<unsigned> ordered_subsets(int m);
// Pairs (S, T) of P_{m,n} in the lexy order; row-major in the matrix view.
std::vector<std::pair<unsigned, unsigned>> lexy_pairs(int m, int n);
std::size_t p_count(int m, int n);
// Rows indexed by S, columns by T.
std::pair<std::size_t, std::size_t> lambda_matrix_shape(int m, int n);
std::vector<int> subset_elements(unsigned mask);

// ---- bisimplicial covers ---------------------------------------------------------

// Per-level covers of the nerve levels; entries are cell indices of Nerve::level.
struct RawCover {
  enum class Fill { Whole, Singletons };
  std::map<std::pair<int, int>, std::vector<std::vector<std::size_t>>> levels;
  Fill fill = Fill::Whole;  // used for levels without an entry
};

// Sets of level (m,n), with the fill rule applied; throws DomainError if they do not cover.
std::vector<std::vector<std::size_t>> raw_level_sets(const RawCover& raw, Nerve& nerve, int m, int n);

using CoverKey = std::vector<Id>;

class BisimplicialCover {
 public:
  struct Member {
    CoverKey key;
    std::vector<std::size_t> cells;  // sorted
  };
  struct LevelData {
    std::vector<Member> members;  // ordered by key
    std::map<CoverKey, std::size_t> index;
  };

  BisimplicialCover(const DoubleGroupoid& dg, std::size_t cap);
  virtual ~BisimplicialCover() = default;

  const DoubleGroupoid& dg() const { return dg_; }
  Nerve& nerve() { return nerve_; }
  virtual std::string kind() const = 0;

  const LevelData& level(int m, int n);
  long member_index(int m, int n, const CoverKey& key);
  bool contains(int m, int n, std::size_t member, std::size_t cell);

  // Index-level face map.
  virtual CoverKey face(int m, int n, const CoverKey& key, Dir dir, int k) = 0;
  // A member containing the cell, chosen compatibly with faces.
  virtual CoverKey canonical(int m, int n, std::size_t cell) = 0;
  // The member containing the cell whose faces in direction dir are the given
  // keys (faces[k] for face k); remaining data canonical. nullopt if none.
  virtual std::optional<CoverKey> fill(int m, int n, std::size_t cell, Dir dir,
                                       const std::vector<CoverKey>& faces) = 0;

 protected:
  virtual LevelData build(int m, int n) = 0;
  std::size_t cap_;

 private:
  const DoubleGroupoid& dg_;
  Nerve nerve_;
  std::map<std::pair<int, int>, LevelData> levels_;
};

// Members indexed by Lambda_{m,n}; V_lambda = cells x with f(x) in U_{lambda(f)} for all f.
// Only members with nonempty V_lambda are listed.
std::unique_ptr<BisimplicialCover> bisimplicial_refinement(const DoubleGroupoid& dg, RawCover raw,
                                                           std::size_t cap = kDefaultMaxCells);
// Refinement of the singleton covers: one member per cell.
std::unique_ptr<BisimplicialCover> finest_cover(const DoubleGroupoid& dg, std::size_t cap = kDefaultMaxCells);
// Members are labellings of the grid vertices by sets of a cover of P; these are
// exactly the cells of the Cech double groupoid.
std::unique_ptr<BisimplicialCover> vertex_cover(const DoubleGroupoid& dg, const Cover& points,
                                                std::size_t cap = kDefaultMaxCells);

// Raw cover of a Lambda-cover (nullptr for other kinds).
const RawCover* raw_cover(const BisimplicialCover& c);

// Faces of members are members and carry the faces of their cells, for m <= max_m, n <= max_n.
ValidationReport check_bisimplicial(BisimplicialCover& c, int max_m, int max_n);
// For a Lambda-cover: V_lambda lies in U_{lambda(full)} of the raw cover.
ValidationReport check_refines_raw(BisimplicialCover& c, int max_m, int max_n);

// ---- Cech bicomplex ------------------------------------------------------------------

// Items are pairs (member, cell), ordered by member then cell. Unnormalized.
class CechSource : public CellSource {
 public:
  explicit CechSource(BisimplicialCover& cover) : cover_(cover) {}
  const DoubleGroupoid& dg() const override { return cover_.dg(); }
  std::size_t count(int m, int n) override;
  Cell cell(int m, int n, std::size_t i) override;
  long face_index(int m, int n, std::size_t i, Dir dir, int k) override;
  bool pinned(int, int, std::size_t) override { return false; }

  BisimplicialCover& cover() { return cover_; }
  // (member, cell index) of an item.
  std::pair<std::size_t, std::size_t> item(int m, int n, std::size_t i);
  long item_index(int m, int n, std::size_t member, std::size_t cell);

 private:
  struct Items {
    std::vector<std::size_t> start;  // per member, into the item list
    std::vector<std::pair<std::size_t, std::size_t>> list;
  };
  const Items& items(int m, int n);

  BisimplicialCover& cover_;
  std::map<std::pair<int, int>, Items> items_;
};

class CechComplex {
 public:
  CechComplex(BisimplicialCover& cover, const DoubleAction& action);

  CechSource& source() { return src_; }
  Bicomplex& bicomplex() { return bc_; }
  BisimplicialCover& cover() { return src_.cover(); }
  // Tot with blocks (m,n), m,n >= 1, degree p + q for (p+1, q+1), as for the discrete complex.
  const TotalComplex& total(int nmax = 1);
  const Homology& h1();

  // Values of a (2,1) or (1,2) cochain per item.
  Vec degree_one_coords(const Cochain& sigma, const Cochain& tau);
  std::pair<Cochain, Cochain> degree_one_cochains(const Vec& x);

 private:
  CechSource src_;
  Bicomplex bc_;
  std::map<int, TotalComplex> tot_;
  std::unique_ptr<Homology> h1_;
};

FinAbGroup cech_h1_total(const DoubleGroupoid& dg, const DoubleAction& action, BisimplicialCover& cover);

// Restriction along the canonical members: c -> (x -> c_{canonical(x)}(x)), landing in
// the unnormalized discrete complex. Returns the discrete degree-one cocycle.
TotalCocycle restrict_to_cells(CechComplex& cx, const Cochain& sigma, const Cochain& tau);
// Class of a Cech degree-one cocycle in the discrete H^1 (normalized context).
Elem discrete_class(CechComplex& cx, CohomologyContext& ctx, const Vec& x);

// Cech cochain maps C(coarse) -> C(fine) given by member maps theta on each level.
using MemberMap = std::function<CoverKey(int m, int n, const CoverKey& fine_key)>;
struct CechRestriction {
  std::map<std::pair<int, int>, SparseMatrix> maps;  // per bidegree
  SparseMatrix tot1;                                 // on Tot^1
  bool chain_map = true;                             // commutes with d_h and d_v
  std::vector<std::string> problems;
};
CechRestriction cech_restriction(CechComplex& coarse, CechComplex& fine, const MemberMap& theta, int max_total = 4);
// Induced map on H^1 in invariant-factor coordinates: images of the generators.
std::vector<Vec> induced_h1(CechComplex& coarse, CechComplex& fine, const CechRestriction& r);

// ---- gluing (extension from a Cech cocycle) -------------------------------------

struct Gluing {
  CechComplex* cx = nullptr;
  Cochain sigma, tau;  // (2,1) and (1,2) Cech cochains

  // psi^h_{k->j}(F) with unit chart i, charts are level (1,1) members; nullopt when
  // the needed members do not exist.
  std::optional<Elem> psi_h(std::size_t box, std::size_t i, std::size_t k, std::size_t j);
  std::optional<Elem> psi_v(std::size_t box, std::size_t i, std::size_t k, std::size_t j);
  // Unit chart determined by k and j (faces of the degenerate cell), if any.
  std::optional<std::size_t> unit_chart_h(std::size_t box, std::size_t k, std::size_t j);
  std::optional<std::size_t> unit_chart_v(std::size_t box, std::size_t k, std::size_t j);
};

// B'/~ with the cocycle-twisted compositions; classes represented in the canonical chart.
ExtensionPresentation glue_extension(CechComplex& cx, const Cochain& sigma, const Cochain& tau);

// ---- Ext over a family of covers ----------------------------------------------------

struct CoverReport {
  std::string label;
  FinAbGroup cech_h1;                // over the refinement of the raw cover
  FinAbGroup opext;                  // H^1 of F[U_00] with K[U_00], via classified extensions
  std::size_t classes = 0;           // classified extensions that validated
  bool agree = false;                // opext == cech_h1
  bool gluing_ok = false;            // every Cech class glues to a valid extension of its class
};

struct TransitionReport {
  std::size_t from = 0, to = 0;
  std::vector<Vec> cech_map;  // H^1 generators of the coarser cover -> finer
  bool chain_map = false;
  bool commutes = false;      // gluing before and after restriction gives the same class
};

struct ExtGroupReport {
  std::vector<CoverReport> covers;
  std::vector<TransitionReport> transitions;
  FinAbGroup ext;  // value at the finest cover of the family
  bool ok() const;
};

// Family ordered from coarse to fine; consecutive P-level covers must refine.
ExtGroupReport ext_group(const DoubleGroupoid& dg, const DoubleAction& action, const std::vector<RawCover>& family,
                         std::size_t cap = kDefaultMaxCells);

}  // namespace dgc
