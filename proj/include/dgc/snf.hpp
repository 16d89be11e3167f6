#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dgc {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... (nonnegative).
struct SmithForm {
  BigMatrix U, V, D;
  std::vector<BigInt> diagonal;  // min(rows, cols) entries
};

SmithForm smith_normal_form(const BigMatrix& m, int cols = -1);

BigMatrix identity_matrix(int n);
BigMatrix multiply(const BigMatrix& a, const BigMatrix& b);
// Exact determinant by fraction-free elimination.
BigInt determinant(BigMatrix a);

}  // namespace dgc
