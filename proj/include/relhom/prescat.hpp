#pragma once

// Morphisms and coproducts of presentations of a fixed finite group, the
// maps they induce on relation modules, and the finite doubling diagram
// P -> P * P (two inclusions) whose equalizer stands in for the limit over
// all presentations.
//
// Presentations of the same group are identified by sharing one
// CayleyGroup; there is no isomorphism search.

#include <cstddef>
#include <vector>

#include "relhom/foxmagnus.hpp"
#include "relhom/freelie.hpp"
#include "relhom/homology.hpp"
#include "relhom/presentations.hpp"
#include "relhom/zgmod.hpp"

namespace relhom {

  // p attached to base's group, with generator i of p sent to the element
  // named by images[i], a word in base's generators.
  PresentedGroup attach_by_words(Presentation const&      p,
                                 PresentedGroup const&    base,
                                 std::vector<Word> const& images);

  // Replace every letter x_s^e of w by images[s]^e.
  Word substitute(Word const& w, std::vector<Word> const& images);

  // A homomorphism of free groups over G: pi' (images[i]) = pi(x_i).
  struct PresMorphism {
    PresentedGroup    source;
    PresentedGroup    target;
    std::vector<Word> images;

    PresMorphism() = default;
    // Checks the groups are shared and that the morphism lies over G.
    PresMorphism(PresentedGroup source, PresentedGroup target, std::vector<Word> images);
  };

  PresMorphism identity_morphism(PresentedGroup const& p);
  // second o first
  PresMorphism compose(PresMorphism const& second, PresMorphism const& first);

  // Sends each generator to the transversal word of its image in the target
  // (BFS-shortest, ties broken by letter order).
  PresMorphism find_morphism(PresentedGroup const& source, PresentedGroup const& target);

  struct Coproduct {
    PresentedGroup object;  // generators of the first factor come first
    PresMorphism   first;
    PresMorphism   second;
  };

  // Free product over G. Clashing generator names in the second factor are
  // primed.
  Coproduct coproduct(PresentedGroup const& a, PresentedGroup const& b);

  // The morphism (f, g) out of the coproduct.
  PresMorphism copair(Coproduct const& c, PresMorphism const& f, PresMorphism const& g);

  // R_ab -> R'_ab: basis words are substituted and rewritten in the target.
  ZGMap induced_relmod_map(PresMorphism const& phi);

  struct CategoryReport {
    std::vector<StageCheck> checks;
    bool                    pass() const;
  };

  // With lambda = (id, find_morphism(b, a)) and lambda' = (find_morphism(a,
  // b), id): lambda_* iota_* = id and lambda'_* iota'_* = id on relation
  // modules, and both inclusions are injective. Throws InvariantViolation on
  // failure.
  CategoryReport splitting_check(PresentedGroup const& a, PresentedGroup const& b);

  // (a) H_1(F, N) + H_1(F', N') -> H_1(F'', N''), N = M (x) R_ab^(n-1), is
  //     injective, through coefficient extension and the block inclusion;
  // (b) H_0((ZG^d)^n) + H_0((ZG^d')^n) -> H_0((ZG^d'')^n) is a split
  //     monomorphism, with an explicit ZG-linear retraction.
  // Throws InvariantViolation on failure.
  CategoryReport coproduct_injectivity_check(PresentedGroup const& a,
                                             PresentedGroup const& b,
                                             std::size_t           n,
                                             ZGModule const&       m,
                                             std::size_t           budget = default_column_budget);

  struct EqualizerReport {
    std::size_t      n = 0;
    // Lives in coinvariants(M (x) R_ab^n).
    Subgroup         equalizer;
    PresentedAbGroup coinvariants;
    HomologyResult   h_even;
    std::vector<StageCheck> checks;

    bool pass() const;
  };

  // {x in H_0(M (x) R_ab^n) : iota_1 x = iota_2 x in H_0(M (x) R''_ab^n)} for
  // the doubling P -> P * P, checked against h_even: equal invariants and
  // the kernel lifts generate the equalizer. Throws InvariantViolation on a
  // mismatch.
  EqualizerReport equalizer_limit(PresentedGroup const& p,
                                  std::size_t           n,
                                  ZGModule const&       m,
                                  std::size_t           budget = default_column_budget);
  EqualizerReport equalizer_limit(PresentedGroup const& p,
                                  std::size_t           n,
                                  std::size_t           budget = default_column_budget);

  struct GammaEqualizerReport {
    std::size_t             n = 0;
    Subgroup                equalizer;  // in gamma_quotient(p, n)
    std::vector<StageCheck> checks;

    bool pass() const;
  };

  // The same equalizer for the functor gamma_quotient. Checks that its
  // generators are n-torsion (4-torsion when n = 2) and, for n >= 2, that
  // l_n sends them into the equalizer of H_0(R_ab^n) and into its n-torsion.
  // Throws InvariantViolation on failure.
  GammaEqualizerReport gamma_equalizer(PresentedGroup const& p,
                                       std::size_t           n,
                                       std::size_t           budget = default_column_budget);

  // The image under phi of the kernel lifts of h_even(source, n, M)
  // generates the kernel lifts of h_even(target, n, M).
  StageCheck h_even_naturality(PresMorphism const& phi,
                               std::size_t         n,
                               ZGModule const&     m,
                               std::size_t         budget = default_column_budget);

  // l'_n o (L_n phi)_* = (phi^n)_* o l_n on coinvariant classes.
  StageCheck l_n_naturality(PresMorphism const& phi,
                            std::size_t         n,
                            std::size_t         budget = default_column_budget);

}  // namespace relhom
