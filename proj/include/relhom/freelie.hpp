#pragma once

// The degree-n part of the free Lie ring on a free abelian group A = Z^r,
// as the span of Lyndon brackets inside A^(x) n, and its ZG-module structure
// when A is a ZG-module. For A = R_ab this gives
//
//   gamma_n R / [gamma_n R, F] = H_0(G, L_n R_ab),
//
// the map l_n into H_0(G, R_ab^n), phi_n = (mu^n)_* l_n, and the torsion
// statements about their kernels.
//
// Tensor index of a word a_1 ... a_n over 0..r-1 is sum a_i r^(n-i), which
// agrees with the left-major Kronecker order and orders words of equal
// length lexicographically.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "relhom/foxmagnus.hpp"
#include "relhom/homology.hpp"
#include "relhom/zgmod.hpp"

namespace relhom {

  using LyndonWord = std::vector<std::uint32_t>;

  // (1/n) sum_{d | n} moebius(d) r^(n/d).
  Int witt_number(std::size_t r, std::size_t n);

  bool is_lyndon(LyndonWord const& w);

  // All Lyndon words of length n over r letters, lexicographically sorted
  // (Duval's generator).
  std::vector<LyndonWord> lyndon_words(std::size_t r, std::size_t n);

  // w = u v with v the longest proper Lyndon suffix; |w| >= 2.
  std::pair<LyndonWord, LyndonWord> standard_factorization(LyndonWord const& w);

  std::size_t tensor_index(LyndonWord const& w, std::size_t r);

  // Expansion in A^(x) |w| of the standard bracketing of w, with
  // [x, y] = x (x) y - y (x) x. Its smallest word is w, with coefficient 1.
  SparseVec bracket_expansion(LyndonWord const& w, std::size_t r);

  struct LieBasis {
    std::size_t             degree   = 0;
    std::size_t             alphabet = 0;
    std::vector<LyndonWord> words;
    IntMat                  expansions;  // r^n x #words
  };

  // Throws BudgetExceeded when r^n > budget.
  LieBasis lie_basis(std::size_t r, std::size_t n, std::size_t budget = default_column_budget);

  // Coordinates of v in the Lyndon basis, or nullopt if v is not in its
  // Z-span. Exact: the expansions are unitriangular in lexicographic order.
  std::optional<IntVec> lie_coordinates(LieBasis const& basis, SparseVec const& v);

  struct FreeLieSubmodule {
    LieBasis basis;
    ZGModule module;
    ZGMap    inclusion;  // module -> M^(x) n
  };

  // L_n M as a submodule of M^(x) n. The action of g is the unique integer
  // solution of inclusion * X = action(g) * inclusion; failure to solve is an
  // InvariantViolation.
  FreeLieSubmodule free_lie_submodule(ZGModule const& m,
                                      std::size_t     n,
                                      std::size_t     budget = default_column_budget);

  // L_n f : L_n M -> L_n M' for f : M -> M', the restriction of f^(x) n.
  ZGMap induced_lie_map(FreeLieSubmodule const& source,
                        FreeLieSubmodule const& target,
                        ZGMap const&            f);

  // H_0(G, L_n R_ab).
  PresentedAbGroup gamma_quotient(PresentedGroup const& pg,
                                  std::size_t           n,
                                  std::size_t           budget = default_column_budget);

  // l_n : H_0(G, L_n R_ab) -> H_0(G, R_ab^n).
  InducedMap l_n_map(PresentedGroup const& pg,
                     std::size_t           n,
                     std::size_t           budget = default_column_budget);

  // phi_n = (mu^n)_* l_n, with H_0(G, (ZG^d)^n) untwisted to a free group.
  InducedMap phi_n_map(PresentedGroup const& pg,
                       std::size_t           n,
                       std::size_t           budget = default_column_budget);

  // J_n = ker l_n.
  Subgroup j_n(PresentedGroup const& pg,
               std::size_t           n,
               std::size_t           budget = default_column_budget);

  struct TorsionReport {
    std::size_t             n = 0;
    AbInvariants            gamma;
    AbInvariants            j_n;
    AbInvariants            ker_phi;
    std::vector<StageCheck> checks;

    bool pass() const;
  };

  // Membership tests on generators:
  //   (a) J_n is n-torsion,
  //   (b) l_n sends ker phi_n into the n-torsion of H_0(G, R_ab^n),
  //   (c) ker phi_n is the torsion subgroup of the gamma quotient,
  //   (d) n (4 when n = 2) kills ker phi_n.
  // Throws InvariantViolation naming the first failing check.
  TorsionReport torsion_report(PresentedGroup const& pg,
                               std::size_t           n,
                               std::size_t           budget = default_column_budget);

}  // namespace relhom
