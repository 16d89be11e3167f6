#pragma once

#include <optional>
#include <vector>

#include "dgc/cohomology.hpp"
#include "dgc/core.hpp"

namespace dgc {

// 1 -> K -> total -> F -> 1. V, H and P of total are those of F.
struct ExtensionPresentation {
  DoubleGroupoid total;
  std::vector<Id> proj;                // total box -> box of F
  std::vector<std::vector<Id>> iota;   // [point][elem] -> total box over Theta_p
};

// Boxes (k,F) with k in K_{bl F}; box id = offset[F] + k.
ExtensionPresentation smash_product(const DoubleGroupoid& dg, const DoubleAction& action, const TotalCocycle& z);
Id smash_box(const ExtensionPresentation& e, Id f, Elem k);

// Pi is a double groupoid morphism over the identity of V, H, P; iota lands in the
// fibers over Theta and is a bundle morphism; the induced action is the given one.
ValidationReport validate_extension(const DoubleGroupoid& dg, const DoubleAction& action,
                                    const ExtensionPresentation& e);

// Fibers {B : Pi(B) = Theta_p}, presented as abelian groups; each must lie in K(total).
AbelianGroupBundle double_kernel(const DoubleGroupoid& dg, const ExtensionPresentation& e);

// Element k with kshift(k, base) = target, both over the same box of F.
Elem fiber_difference(const DoubleGroupoid& dg, const ExtensionPresentation& e, Id base, Id target);
// base / (iota(k) . idd_h b(base))
Id kshift(const DoubleGroupoid& dg, const ExtensionPresentation& e, Elem k, Id base);

// Lowest total box over each box of F.
std::vector<Id> default_section(const DoubleGroupoid& dg, const ExtensionPresentation& e);

// sigma(F/G) = s(F)/s(G) - s(F/G), tau(F,G) = s(F)s(G) - s(FG), measured by
// fiber_difference. Raw values on all cells, indexed like the unnormalized levels.
TotalCocycle raw_cocycle(const DoubleGroupoid& dg, const ExtensionPresentation& e, const std::vector<Id>& section);
// Normalized cocycle of the extension (raw cocycle passed through normalize_cocycle).
TotalCocycle cocycle_from_extension(const DoubleGroupoid& dg, const DoubleAction& action,
                                    const ExtensionPresentation& e,
                                    const std::optional<std::vector<Id>>& section = std::nullopt);

// Decided cohomologically: the cocycles differ by a coboundary.
bool extensions_equivalent(CohomologyContext& ctx, const ExtensionPresentation& a, const ExtensionPresentation& b);

// Is there an isomorphism covering the box automorphism psi of F and the bundle
// automorphism phi ([point] table)? psi must fix V, H and P.
bool extensions_isomorphic(CohomologyContext& ctx, const ExtensionPresentation& a, const ExtensionPresentation& b,
                           const std::vector<Id>& psi, const std::vector<std::vector<Elem>>& phi);

struct ClassifiedExtension {
  Elem cls = 0;
  Vec coords;  // in H^1 invariant factors
  TotalCocycle cocycle;
  ExtensionPresentation ext;
  bool valid = false;
};

std::vector<ClassifiedExtension> classify_extensions(CohomologyContext& ctx);

}  // namespace dgc
