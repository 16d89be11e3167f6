#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dgc/core.hpp"

namespace dgc::test {

struct Case {
  std::string name;
  DoubleGroupoid dg;
  DoubleAction action;
};

inline FinAbGroup cyclic(std::int64_t n) { return n == 1 ? FinAbGroup{} : FinAbGroup{{n}}; }

inline std::unique_ptr<Case> trivial_case(std::string name, DoubleGroupoid dg, std::int64_t n) {
  auto c = std::make_unique<Case>();
  c->name = std::move(name);
  c->dg = std::move(dg);
  c->action = trivial_action(c->dg, constant_bundle(c->dg.points, cyclic(n)));
  return c;
}

// First action by units of Z/n that is not trivial, if any.
inline std::unique_ptr<Case> twisted_case(std::string name, DoubleGroupoid dg, std::int64_t n) {
  auto acts = unit_actions(dg, dg.points, n);
  for (auto& a : acts) {
    bool nontrivial = false;
    for (const auto& t : a.v)
      for (std::size_t k = 0; k < t.size(); ++k) nontrivial = nontrivial || t[k] != static_cast<Elem>(k);
    for (const auto& t : a.h)
      for (std::size_t k = 0; k < t.size(); ++k) nontrivial = nontrivial || t[k] != static_cast<Elem>(k);
    if (!nontrivial) continue;
    auto c = std::make_unique<Case>();
    c->name = std::move(name);
    c->dg = std::move(dg);
    c->action = a;
    return c;
  }
  return nullptr;
}

}  // namespace dgc::test
