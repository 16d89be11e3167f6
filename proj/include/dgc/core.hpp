#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgc {

using Id = std::int32_t;
using Elem = std::int64_t;
constexpr Id kNone = -1;

// Exit-code classes for the CLI: domain 1, resource 2, input 3.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partial composition a*b, defined iff end[a] == start[b]. Storage is exactly
// one slot per composable pair.
class PartialTable {
 public:
  PartialTable() = default;
  PartialTable(std::vector<Id> end, std::vector<Id> start, int anchors);

  bool composable(Id a, Id b) const { return end_[a] == start_[b]; }
  Id get(Id a, Id b) const {
    if (end_[a] != start_[b]) return kNone;
    return data_[off_[a] + pos_[b]];
  }
  void set(Id a, Id b, Id c) { data_[off_[a] + pos_[b]] = c; }
  const std::vector<Id>& starting_at(Id anchor) const { return by_start_[anchor]; }
  // Elements b composable on the right of a.
  const std::vector<Id>& right_of(Id a) const { return by_start_[end_[a]]; }
  std::size_t slots() const { return data_.size(); }
  int size() const { return static_cast<int>(end_.size()); }

 private:
  std::vector<Id> end_, start_, pos_;
  std::vector<std::vector<Id>> by_start_;
  std::vector<std::size_t> off_;
  std::vector<Id> data_;
};

struct FiniteGroupoid {
  int objects = 0;
  std::vector<Id> src, dst;  // s and e
  std::vector<Id> ident;     // per object
  std::vector<Id> inv;
  PartialTable comp;

  int arrows() const { return static_cast<int>(src.size()); }
  Id compose(Id g, Id h) const { return comp.get(g, h); }
  bool is_identity(Id g) const { return ident[src[g]] == g; }
};

// Builds a groupoid from a total composition function on composable pairs;
// identities and inverses are located by search.
FiniteGroupoid make_groupoid(int objects, std::vector<Id> src, std::vector<Id> dst,
                             const std::function<Id(Id, Id)>& compose);

struct Violation {
  std::string axiom;
  std::string detail;
  bool structural = false;
};

struct ValidationReport {
  std::vector<Violation> items;

  bool ok() const { return items.empty(); }
  bool structural() const;
  std::size_t count(const std::string& axiom) const;
  void add(std::string axiom, std::string detail, bool structural = false) {
    items.push_back({std::move(axiom), std::move(detail), structural});
  }
  void merge(const ValidationReport& o, const std::string& prefix = "");
};

ValidationReport validate_groupoid(const FiniteGroupoid& g, const std::string& label = "groupoid");

struct DoubleGroupoid {
  std::string name;
  int points = 0;
  FiniteGroupoid V, H;
  std::vector<Id> t, b, l, r;  // t,b in H; l,r in V
  PartialTable hcomp, vcomp;
  std::vector<Id> idd_v;  // horizontal identity over each V arrow
  std::vector<Id> idd_h;  // vertical identity over each H arrow
  std::vector<Id> hinv, vinv;
  // Structural defects found while assembling from external data.
  std::vector<Violation> defects;

  int boxes() const { return static_cast<int>(t.size()); }
  Id hc(Id a, Id c) const { return hcomp.get(a, c); }
  Id vc(Id a, Id c) const { return vcomp.get(a, c); }
  Id theta(Id p) const { return idd_v[V.ident[p]]; }
  Id tl(Id a) const { return H.src[t[a]]; }
  Id tr(Id a) const { return H.dst[t[a]]; }
  Id bl(Id a) const { return H.src[b[a]]; }
  Id br(Id a) const { return H.dst[b[a]]; }
  bool v_thin(Id a) const { return idd_v[l[a]] == a; }
  bool h_thin(Id a) const { return idd_h[t[a]] == a; }
  bool in_kernel(Id a) const {
    return H.is_identity(t[a]) && H.is_identity(b[a]) && V.is_identity(l[a]) &&
           V.is_identity(r[a]);
  }
};

using BoxFn = std::function<Id(Id, Id)>;

// Assembles a double groupoid from side maps and total composition functions
// on composable pairs. Identities and inverses are located by search.
DoubleGroupoid make_double_groupoid(std::string name, int points, FiniteGroupoid V,
                                    FiniteGroupoid H, std::vector<Id> t, std::vector<Id> b,
                                    std::vector<Id> l, std::vector<Id> r, const BoxFn& hcomp,
                                    const BoxFn& vcomp);

ValidationReport validate_double_groupoid(const DoubleGroupoid& dg, bool check_filling = false);

FiniteGroupoid core_groupoid(const DoubleGroupoid& dg, std::vector<Id>* boxes_out = nullptr);

// E -> A := {idd_V l(A), A ; E, idd_H b(A)}, defined iff tr(E) = bl(A).
Id core_act(const DoubleGroupoid& dg, Id e, Id a);

// ---- finite abelian groups ------------------------------------------------

struct FinAbGroup {
  std::vector<std::int64_t> factors;  // invariant factors, each >= 2, d1 | d2 | ...

  std::int64_t order() const;
  int rank() const { return static_cast<int>(factors.size()); }
  std::vector<std::int64_t> decode(Elem e) const;
  Elem encode(const std::vector<std::int64_t>& c) const;
  Elem add(Elem a, Elem c) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem c) const { return add(a, neg(c)); }
  Elem scale(Elem a, std::int64_t k) const;
  bool operator==(const FinAbGroup& o) const { return factors == o.factors; }
  std::string str() const;
};

// Invariant factors from an arbitrary list of cyclic orders.
FinAbGroup normalize_factors(const std::vector<std::int64_t>& orders);

// Presentation of an abstract finite abelian group given by its addition.
struct AbelianPresentation {
  FinAbGroup group;
  std::vector<Elem> to_elem;   // presentation element -> original element
  std::vector<Elem> from_elem; // original element -> presentation element
};
AbelianPresentation present_abelian_group(int n, int zero, const std::function<int(int, int)>& add);

struct AbelianGroupBundle {
  std::vector<FinAbGroup> fibers;  // per point
  int points() const { return static_cast<int>(fibers.size()); }
};

// Action tables map element indices: v[g] : K_{b(g)} -> K_{t(g)}, h[x] : K_{r(x)} -> K_{l(x)}.
struct DoubleAction {
  AbelianGroupBundle bundle;
  std::vector<std::vector<Elem>> v, h;

  Elem act_v(Id g, Elem k) const { return v[g][k]; }
  Elem act_h(Id x, Elem k) const { return h[x][k]; }
};

DoubleAction trivial_action(const DoubleGroupoid& dg, const AbelianGroupBundle& bundle);

// Builds a table from an integer matrix (rows: target factors, cols: source factors).
std::vector<Elem> table_from_matrix(const FinAbGroup& src, const FinAbGroup& dst,
                                    const std::vector<std::vector<std::int64_t>>& m);
// Matrix of a homomorphism table on generators (same layout as above).
std::vector<std::vector<std::int64_t>> matrix_from_table(const FinAbGroup& src, const FinAbGroup& dst,
                                                         const std::vector<Elem>& table);

ValidationReport validate_action(const DoubleGroupoid& dg, const DoubleAction& a);

struct KernelBundle {
  AbelianGroupBundle bundle;
  std::vector<std::vector<Id>> box_of;  // [point][elem] -> box
  std::vector<Elem> elem_of;            // box -> elem or -1
};

KernelBundle kernel_bundle(const DoubleGroupoid& dg);
DoubleAction conjugation_action(const DoubleGroupoid& dg, const KernelBundle& kb);
inline DoubleAction conjugation_action(const DoubleGroupoid& dg) {
  return conjugation_action(dg, kernel_bundle(dg));
}

// ---- builders --------------------------------------------------------------

FiniteGroupoid group_as_groupoid(int order, const std::function<int(int, int)>& mul);
FiniteGroupoid cyclic_group(int n);
FiniteGroupoid pair_groupoid(int n);
FiniteGroupoid discrete_groupoid(int n);

DoubleGroupoid make_point();
// Boxes (g,x) over a point with l = r = g and t = b = x.
DoubleGroupoid make_product(const FiniteGroupoid& vgroup, const FiniteGroupoid& hgroup,
                            std::string name = "product");
DoubleGroupoid make_vac22();
// All compatible side quadruples.
DoubleGroupoid make_coarse(const FiniteGroupoid& V, const FiniteGroupoid& H, std::string name = "coarse");
DoubleGroupoid make_pair2();

// Relabels arrows and boxes by random permutations drawn from seed.
DoubleGroupoid relabel(const DoubleGroupoid& dg, std::uint64_t seed);
// Random valid double groupoid with at most max_boxes boxes.
DoubleGroupoid random_double_groupoid(std::uint64_t seed, int max_boxes = 12);

// Constant bundle with the given fiber over every point.
AbelianGroupBundle constant_bundle(int points, const FinAbGroup& fiber);

// All actions of dg on a constant cyclic bundle by unit multipliers.
std::vector<DoubleAction> unit_actions(const DoubleGroupoid& dg, int points, std::int64_t n,
                                       std::size_t limit = 4096);

}  // namespace dgc
