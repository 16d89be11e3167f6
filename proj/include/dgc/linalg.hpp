#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dgc/core.hpp"
#include "dgc/snf.hpp"

namespace dgc {

using Vec = std::vector<std::int64_t>;
using Moduli = std::vector<std::int64_t>;  // one cyclic order per coordinate

// Row-major sparse integer matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void add(int i, int j, std::int64_t v);
  const std::vector<std::pair<int, std::int64_t>>& row(int i) const { return data_[i]; }
  // Sorts rows, merges duplicates and reduces entries mod the row moduli.
  void finalize(const Moduli& row_mod);
  std::size_t nonzeros() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> data_;
};

Vec apply(const SparseMatrix& m, const Vec& x, const Moduli& row_mod);
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const Moduli& row_mod);
bool is_zero(const SparseMatrix& m, const Moduli& row_mod);
bool is_zero(const Vec& x);

// Cochain complex of finite abelian groups C^0 .. C^N with d[n] : C^n -> C^{n+1}.
struct CochainComplex {
  std::vector<Moduli> groups;
  std::vector<SparseMatrix> d;

  int top() const { return static_cast<int>(groups.size()) - 1; }
};

// Smith form over Z/p^e: U * A * V = diag(p^v_t). Entries kept in [0, p^e).
struct LocalSmith {
  std::int64_t p = 0, q = 0;  // q = p^e
  int e = 0;
  std::vector<Vec> U, Uinv, V;
  std::vector<int> val;  // per diagonal position, e when zero
};
LocalSmith local_smith(std::vector<Vec> a, int cols, std::int64_t p, int e, bool want_u, bool want_v);

// p-primary piece of a homology group.
struct LocalPart {
  std::int64_t p = 0, q = 0;
  int e = 0;
  std::vector<int> coords;            // coordinates of C^n with p | modulus
  std::vector<int> a;                 // their p-exponents
  std::vector<std::int64_t> unit;     // embedding multipliers into Z/d_j
  std::vector<Vec> U, W;              // kernel lattice basis change and its inverse
  std::vector<int> c;                 // kernel diagonal exponents (e when absent)
  std::vector<int> zrows;             // rows j with c_j < e
  std::vector<Vec> U2, U2inv;         // cokernel basis change on z space
  std::vector<int> v;                 // summand exponents on z space
  std::vector<int> summands;          // z-space rows i with v_i > 0
};

struct Homology {
  FinAbGroup group;
  Moduli moduli;  // of C^n
  std::vector<LocalPart> parts;
  // invariant factor -> (part, position in part.summands)
  std::vector<std::vector<std::pair<int, int>>> factor_parts;

  // Coordinates in group of the class of a cocycle.
  Vec classify(const Vec& x) const;
  Elem classify_elem(const Vec& x) const { return group.encode(classify(x)); }
  Vec representative(const Vec& coords) const;
  Vec representative_elem(Elem e) const { return representative(group.decode(e)); }
};

Homology homology(const CochainComplex& cx, int n);

// Order of the subgroup of (+) Z/moduli generated by gens.
BigInt span_order(const std::vector<Vec>& gens, const Moduli& moduli);

// Some x with A x = b, where A : (+) Z/src -> (+) Z/dst; empty when b is not in the image.
std::optional<Vec> solve(const SparseMatrix& a, const Moduli& src, const Moduli& dst, const Vec& b);

// Prime factorization of a positive integer.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

}  // namespace dgc
