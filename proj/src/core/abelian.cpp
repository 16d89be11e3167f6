#include <algorithm>
#include <map>
#include <numeric>

#include "dgc/core.hpp"
#include "dgc/snf.hpp"

namespace dgc {

std::int64_t FinAbGroup::order() const {
  std::int64_t o = 1;
  for (auto d : factors) o *= d;
  return o;
}

std::vector<std::int64_t> FinAbGroup::decode(Elem e) const {
  std::vector<std::int64_t> c(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    c[i] = e % factors[i];
    e /= factors[i];
  }
  return c;
}

Elem FinAbGroup::encode(const std::vector<std::int64_t>& c) const {
  Elem e = 0;
  for (std::size_t i = factors.size(); i-- > 0;) {
    std::int64_t v = c[i] % factors[i];
    if (v < 0) v += factors[i];
    e = e * factors[i] + v;
  }
  return e;
}

Elem FinAbGroup::add(Elem a, Elem c) const {
  Elem e = 0, mult = 1;
  for (auto d : factors) {
    e += ((a % d + c % d) % d) * mult;
    a /= d;
    c /= d;
    mult *= d;
  }
  return e;
}

Elem FinAbGroup::neg(Elem a) const {
  Elem e = 0, mult = 1;
  for (auto d : factors) {
    e += ((d - a % d) % d) * mult;
    a /= d;
    mult *= d;
  }
  return e;
}

Elem FinAbGroup::scale(Elem a, std::int64_t k) const {
  Elem e = 0, mult = 1;
  for (auto d : factors) {
    std::int64_t v = ((a % d) * (k % d)) % d;
    if (v < 0) v += d;
    e += v * mult;
    a /= d;
    mult *= d;
  }
  return e;
}

std::string FinAbGroup::str() const {
  if (factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(factors[i]);
  }
  return s;
}

FinAbGroup normalize_factors(const std::vector<std::int64_t>& orders) {
  // prime -> exponents
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (auto d : orders) {
    if (d <= 0) throw DomainError("cyclic order must be positive");
    for (std::int64_t p = 2; d > 1; ++p) {
      if (p * p > d) p = d;
      std::int64_t q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      if (q > 1) powers[p].push_back(q);
    }
  }
  std::size_t k = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.rbegin(), v.rend());
    k = std::max(k, v.size());
  }
  // largest factor first, then reverse to get d1 | d2 | ...
  std::vector<std::int64_t> f(k, 1);
  for (auto& [p, v] : powers)
    for (std::size_t i = 0; i < v.size(); ++i) f[i] *= v[i];
  std::reverse(f.begin(), f.end());
  return FinAbGroup{f};
}

AbelianPresentation present_abelian_group(int n, int zero, const std::function<int(int, int)>& add) {
  // Generators e_g for every element; relations e_g + e_h - e_{g+h} and e_zero.
  BigMatrix rel;
  rel.reserve(static_cast<std::size_t>(n) * n + 1);
  for (int g = 0; g < n; ++g)
    for (int h = g; h < n; ++h) {
      std::vector<BigInt> row(n, 0);
      row[g] += 1;
      row[h] += 1;
      row[add(g, h)] -= 1;
      bool nz = std::any_of(row.begin(), row.end(), [](const BigInt& x) { return x != 0; });
      if (nz) rel.push_back(std::move(row));
    }
  {
    std::vector<BigInt> row(n, 0);
    row[zero] = 1;
    rel.push_back(std::move(row));
  }
  SmithForm f = smith_normal_form(rel, n);
  // x ~ x' iff (x - x') V lies in the row space of D.
  std::vector<int> keep;
  std::vector<std::int64_t> factors;
  for (int t = 0; t < n; ++t) {
    BigInt d = t < static_cast<int>(f.diagonal.size()) ? f.diagonal[t] : BigInt(0);
    if (d == 1) continue;
    if (d == 0) throw DomainError("group table does not describe a finite group");
    keep.push_back(t);
    factors.push_back(static_cast<std::int64_t>(d));
  }
  AbelianPresentation p;
  p.group.factors = factors;
  if (p.group.order() != n) throw DomainError("group table is not an abelian group of order " + std::to_string(n));
  p.from_elem.assign(n, 0);
  p.to_elem.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    std::vector<std::int64_t> c(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      BigInt v = f.V[g][keep[i]] % factors[i];
      if (v < 0) v += factors[i];
      c[i] = static_cast<std::int64_t>(v);
    }
    p.from_elem[g] = p.group.encode(c);
    if (p.to_elem[p.from_elem[g]] != -1) throw DomainError("group table is not an abelian group");
    p.to_elem[p.from_elem[g]] = g;
  }
  return p;
}

}  // namespace dgc
