#pragma once

// Fox derivatives evaluated in ZG, the relation module R_ab as a ZG-module
// and the Magnus embedding mu: R_ab -> ZG^d, together with the exact sequence
//
//   0 -> R_ab --mu--> ZG^d --sigma--> ZG --eps--> Z -> 0.
//
// ZG^d is regular_free_module(G, d); basis index s * m + h stands for
// h (1 (x) (x_s - 1)).

#include <string>
#include <vector>

#include "relhom/presentations.hpp"
#include "relhom/zgmod.hpp"

namespace relhom {

  // Coefficient vector over the elements of G.
  using GroupRingElement = IntVec;

  // d w / d x_s, pushed down to ZG. One left-to-right pass with the running
  // prefix image: a letter x_s contributes +prefix, a letter x_s^-1
  // contributes -prefix * x_s^-1.
  GroupRingElement fox_derivative(Word const&        w,
                                  std::uint32_t      s,
                                  QuotientMap const& q,
                                  CayleyGroup const& g);

  // Concatenation of all d Fox derivatives, in ZG^d coordinates.
  IntVec fox_gradient(Word const& w, QuotientMap const& q, CayleyGroup const& g);

  // R_ab with the conjugation action h . b_i = t_h b_i t_h^-1 (rewritten).
  // The action is checked against alternative lifts: the letter x_s for the
  // image of each generator and t_h b_0 for every h.
  ZGModule relation_module(SchreierData const& sd);

  // mu as a ZGMap; injectivity is checked.
  ZGMap magnus_map(SchreierData const& sd, ZGModule const& relmod);

  struct RelationSequence {
    ZGModule relmod;
    ZGMap    mu;       // R_ab -> ZG^d
    ZGMap    sigma;    // ZG^d -> ZG, h e_s -> h (x_s - 1)
    ZGMap    epsilon;  // ZG -> Z, augmentation
  };

  RelationSequence relation_sequence(PresentedGroup const& pg);

  struct StageCheck {
    std::string         name;
    bool                pass = false;
    // Vectors that witness a failure (empty when the stage passes).
    std::vector<IntVec> witnesses;
    std::string         detail;
  };

  struct SequenceReport {
    std::vector<StageCheck> stages;
    bool                    pass() const;
  };

  // (a) mu injective, (b) ker sigma = im mu, (c) ker eps = im sigma,
  // (d) eps surjective; lattices compared by mutual containment.
  SequenceReport verify_relation_sequence(PresentedGroup const& pg);
  SequenceReport verify_relation_sequence(RelationSequence const& seq);

}  // namespace relhom
