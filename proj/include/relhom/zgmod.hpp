#pragma once

// Finite-rank ZG-modules given by one integer action matrix per group
// element, diagonal tensor products, coinvariants and induced maps.
//
// Action convention: left action, action(g) * action(h) = action(g h).

#include <cstddef>
#include <memory>
#include <vector>

#include "relhom/intlattice.hpp"
#include "relhom/presentations.hpp"

namespace relhom {

  using GroupPtr = std::shared_ptr<CayleyGroup const>;

  class ZGModule {
   public:
    ZGModule() = default;
    // action[g] is rank x rank. Validates the module axioms.
    ZGModule(GroupPtr group, std::size_t rank, std::vector<IntMat> action);
    // Shapes only; for modules whose axioms hold by construction.
    static ZGModule unchecked(GroupPtr group, std::size_t rank, std::vector<IntMat> action);

    std::size_t     rank() const noexcept { return _rank; }
    GroupPtr const& group() const noexcept { return _group; }
    IntMat const&   action(element_index g) const { return (*_action)[g]; }

    // Group law of the action: identity acts as I and action(g h) =
    // action(g) action(h). All pairs are compared when m * rank^2 <= 10^6;
    // above that, action(g s) = action(g) action(s) for every g and every
    // generator s, which already implies the law for all pairs.
    void validate() const;

   private:
    GroupPtr                                   _group;
    std::size_t                                _rank = 0;
    std::shared_ptr<std::vector<IntMat> const> _action;
  };

  // The module on which generator_images[s] acts by generator_actions[s];
  // the other elements act by products along a breadth-first search. Throws
  // InvariantViolation if the matrices do not define an action.
  ZGModule module_from_generators(GroupPtr                          group,
                                  std::vector<element_index> const& generator_images,
                                  std::vector<IntMat> const&        generator_actions);

  ZGModule trivial_module(GroupPtr group, std::size_t k);
  // ZG^k; basis index slot * m + h stands for h * e_slot.
  ZGModule regular_free_module(GroupPtr group, std::size_t k);
  // Diagonal action; basis index i * rank(N) + j stands for e_i (x) e_j.
  ZGModule tensor(ZGModule const& m, ZGModule const& n);
  // M + N; the basis of M comes first.
  ZGModule direct_sum(ZGModule const& m, ZGModule const& n);
  // M^{(x) n}; n = 0 gives the trivial module Z.
  ZGModule tensor_power(ZGModule const& m, std::size_t n);

  // Equivariant map; matrix is target.rank() x source.rank().
  struct ZGMap {
    ZGModule source;
    ZGModule target;
    IntMat   matrix;

    ZGMap() = default;
    // Checks matrix * action_src(g) = action_tgt(g) * matrix for every g.
    ZGMap(ZGModule source, ZGModule target, IntMat matrix);
  };

  ZGMap compose(ZGMap const& second, ZGMap const& first);
  // f (x) g on tensor products.
  ZGMap tensor(ZGMap const& f, ZGMap const& g);
  ZGMap identity_map(ZGModule const& m);

  // Z^ambient / rowspan(relations), with its decomposition computed up front.
  class PresentedAbGroup {
   public:
    PresentedAbGroup() = default;
    PresentedAbGroup(std::size_t ambient, IntMat relations);

    std::size_t            ambient() const noexcept { return _ambient; }
    IntMat const&          relations() const noexcept { return _relations; }
    LatticeQuotient const& quotient() const noexcept { return *_quotient; }
    AbInvariants           invariants() const { return _quotient->invariants(); }
    // Is the class of y zero?
    bool contains(IntVec const& y) const { return _quotient->contains(y); }

   private:
    std::size_t                            _ambient = 0;
    IntMat                                 _relations;
    std::shared_ptr<LatticeQuotient const> _quotient;
  };

  // H_0(G, M): relations (action(s) - I) e_i for the generator images s.
  PresentedAbGroup coinvariants(ZGModule const& m);
  // The same group with relations from every element; for cross-checks.
  PresentedAbGroup coinvariants_all_elements(ZGModule const& m);

  // A homomorphism of presented groups induced by an ambient matrix.
  struct InducedMap {
    PresentedAbGroup source;
    PresentedAbGroup target;
    IntMat           matrix;

    InducedMap() = default;
    // Checks that every source relation is sent into the target lattice.
    InducedMap(PresentedAbGroup source, PresentedAbGroup target, IntMat matrix);
  };

  InducedMap induced_coinvariant_map(ZGMap const& f);

  // A subgroup of a presented group given by ambient lifts of cyclic
  // generators; invariants describe the subgroup abstractly, generators[i]
  // generates the i-th cyclic factor.
  struct Subgroup {
    AbInvariants        invariants;
    IntVec              moduli;
    std::vector<IntVec> generators;
  };

  // Kernel of the induced map: {x : matrix x in target lattice} modulo the
  // source lattice.
  Subgroup kernel_of_induced(InducedMap const& f);
  // Image of the induced map as an abstract group.
  AbInvariants image_of_induced(InducedMap const& f);
  // Cokernel of the induced map.
  AbInvariants cokernel_of_induced(InducedMap const& f);

  // The torsion subgroup, generated by the torsion components.
  Subgroup torsion_subgroup(PresentedAbGroup const& p);

  // {x : n x in relations} / relations.
  Subgroup n_torsion(PresentedAbGroup const& p, Int const& n);
  bool     is_n_torsion(PresentedAbGroup const& p, Int const& n, IntVec const& x);

  // Is the class of x in the subgroup generated by the classes of gens?
  bool subgroup_contains(PresentedAbGroup const&    p,
                         std::vector<IntVec> const& gens,
                         IntVec const&              x);
  bool same_subgroup(PresentedAbGroup const&    p,
                     std::vector<IntVec> const& a,
                     std::vector<IntVec> const& b);

  // The isomorphism H_0(G, M (x) ZG^k) -> Z^{rank(M) k},
  // [v (x) h e_i] -> h^-1 v placed in slot i (index i * rank(M) + j). The
  // returned matrix acts on the ambient of coinvariants(tensor(M, ZG^k)).
  // With verify set, well-definedness and bijectivity are checked.
  IntMat untwist_free_coinvariants(ZGModule const& m, std::size_t k, bool verify = true);

}  // namespace relhom
