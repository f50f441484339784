#pragma once

// Words in a free group, finite presentations, coset enumeration to a Cayley
// table, Schreier transversals and abelianised Reidemeister rewriting.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "relhom/intlattice.hpp"

namespace relhom {

  using element_index = std::uint32_t;

  struct Letter {
    std::uint32_t gen;
    std::int64_t  exp;

    friend bool operator==(Letter const&, Letter const&) = default;
  };

  // A freely reduced word: adjacent letters have distinct generators and
  // nonzero exponents. The empty word is the identity.
  class Word {
   public:
    Word() = default;

    static Word generator(std::uint32_t gen, std::int64_t exp = 1);

    std::vector<Letter> const& letters() const noexcept { return _letters; }
    bool                       empty() const noexcept { return _letters.empty(); }
    // Sum of |exponents|.
    std::size_t length() const;
    Word        inverse() const;
    Word        pow(std::int64_t k) const;
    // Exponent sum of each generator, in Z^num_generators.
    std::vector<std::int64_t> exponent_sums(std::size_t num_generators) const;

    std::string to_string(std::vector<std::string> const& names) const;

    friend Word operator*(Word const& u, Word const& v);
    friend bool operator==(Word const&, Word const&) = default;

   private:
    friend Word reduce(std::vector<Letter> const& raw);
    std::vector<Letter> _letters;
  };

  // Free reduction of an arbitrary letter list.
  Word reduce(std::vector<Letter> const& raw);

  // [u,v] = u^-1 v^-1 u v
  Word commutator(Word const& u, Word const& v);

  struct Presentation {
    std::size_t              num_generators = 0;
    std::vector<Word>        relators;
    std::vector<std::string> generator_names;

    // Throws InvariantViolation if a relator is empty or mentions an
    // out-of-range generator.
    void        validate() const;
    std::string to_string() const;
  };

  // Parses the text format
  //
  //   # comment
  //   gens: x, y
  //   rels: x^2, y^2, (x y)^3, [x, y], x y = y x
  //
  // Words are juxtapositions of generator names, parenthesised words,
  // commutators [u, v] (left normed for more arguments) and the identity 1,
  // each optionally raised to an integer power with ^. A run of single-letter
  // generator names may be written without spaces ("xy"). Relations u = v
  // become u v^-1. The rels list may continue over several lines.
  Presentation parse_presentation(std::string_view text);

  // A finite group as a multiplication table. Element 0 is the identity.
  class CayleyGroup {
   public:
    CayleyGroup(std::size_t                order,
                std::vector<element_index> table,
                std::vector<element_index> generators);

    std::size_t   order() const noexcept { return _order; }
    element_index identity() const noexcept { return 0; }
    element_index mul(element_index a, element_index b) const {
      return _table[static_cast<std::size_t>(a) * _order + b];
    }
    element_index inv(element_index a) const { return _inverse[a]; }
    std::vector<element_index> const& inverses() const noexcept {
      return _inverse;
    }
    // A generating set (the images of the generators of the presentation the
    // table was enumerated from).
    std::vector<element_index> const& generators() const noexcept {
      return _generators;
    }
    element_index element_order(element_index a) const;

    // Throws InvariantViolation unless the table is a group law: identity row
    // and column, Latin square, associativity (exhaustive for order <= 64,
    // 10*m^2 sampled triples above) and the generators generate.
    void validate() const;

    friend bool operator==(CayleyGroup const& a, CayleyGroup const& b) {
      return a._table == b._table;
    }

   private:
    std::size_t                _order;
    std::vector<element_index> _table;
    std::vector<element_index> _inverse;
    std::vector<element_index> _generators;
  };

  // Images of the free generators in a CayleyGroup.
  struct QuotientMap {
    std::vector<element_index> images;

    // Throws InvariantViolation unless the images generate the group and
    // every relator of p evaluates to the identity.
    void validate(CayleyGroup const& g, Presentation const& p) const;
  };

  element_index evaluate(QuotientMap const& q, CayleyGroup const& g, Word const& w);

  inline constexpr std::size_t default_coset_limit = 20000;

  struct Enumeration {
    std::shared_ptr<CayleyGroup const> group;
    QuotientMap                        map;
  };

  // Todd-Coxeter enumeration of the cosets of the trivial subgroup, HLT
  // strategy: cosets are processed in order of definition, every relator is
  // scanned from each live coset and gaps are filled by new definitions;
  // coincidences are processed with a union-find queue keeping the smaller
  // coset. The finished table is renumbered by breadth-first search from the
  // identity in the column order x0, x0^-1, x1, x1^-1, ..., so element indices
  // are independent of the order in which cosets happened to be defined.
  //
  // Throws EnumerationLimitError if more than `limit` cosets are needed.
  Enumeration coset_enumerate(Presentation const& p,
                              std::size_t         limit = default_coset_limit);

  // Schreier transversal and the induced basis of R_ab.
  struct SchreierData {
    std::shared_ptr<CayleyGroup const> group;
    QuotientMap                        map;
    // transversal[g] is the BFS-shortest word (letter order x0, x0^-1, x1,
    // ...) reaching g; the set is prefix closed.
    std::vector<Word> transversal;
    // basis_index[g * d + s] is -1 when t_g s t_{gs}^-1 is freely trivial,
    // otherwise its index in the basis of R_ab.
    std::vector<std::int64_t> basis_index;
    // basis_words[i] = t_g s t_{gs}^-1 for the i-th non-trivial pair.
    std::vector<Word>                                    basis_words;
    std::vector<std::pair<element_index, std::uint32_t>> basis_pairs;
    std::size_t                                          rank = 0;

    std::size_t num_generators() const noexcept { return map.images.size(); }
  };

  SchreierData schreier_transversal(std::shared_ptr<CayleyGroup const> g,
                                    QuotientMap const&                 q);

  // Coordinates of w[R,R] in the Schreier basis of R_ab. Throws Error if
  // w is not in R.
  IntVec rewrite_in_R(SchreierData const& sd, Word const& w);

  // An object (F, pi) of the presentation category together with the
  // machinery derived from it.
  struct PresentedGroup {
    Presentation                       presentation;
    std::shared_ptr<CayleyGroup const> group;
    QuotientMap                        map;
    SchreierData                       schreier;

    std::size_t num_generators() const noexcept {
      return presentation.num_generators;
    }
    std::size_t order() const noexcept { return group->order(); }
    std::size_t relation_rank() const noexcept { return schreier.rank; }
  };

  // Enumerates p and builds its Schreier data.
  PresentedGroup realize(Presentation const& p,
                         std::size_t         limit = default_coset_limit);

  // Attaches p to an existing group through explicit generator images. The
  // relators of p are only required to lie in ker(pi); the object is the
  // surjection itself.
  PresentedGroup attach(Presentation const&                p,
                        std::shared_ptr<CayleyGroup const> group,
                        QuotientMap                        map);

  // Coset limit, honouring the RELHOM_COSET_LIMIT environment variable.
  std::size_t coset_limit_from_environment();

}  // namespace relhom
