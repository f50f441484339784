#pragma once

// Integral homology of a finite group from a presentation.
//
//   H_2n(G, M)   = kernel of H_0(M (x) R_ab^n) -> H_0(M (x) (ZG^d)^n)
//                  induced by id_M (x) mu^n,
//   H_2n+1(G, Z) = H_1(G, R_ab^n), read off the five-term sequence
//   0 -> H_2n(G,M) -> H_0(G, N (x) R_ab) -> H_1(F, N) -> H_1(G, N) -> 0
//   with N = M (x) R_ab^(n-1).
//
// H_0 of a module of the form X (x) ZG^k is identified with X^k by
// untwist_free_coinvariants, so every target lattice here is free.
// bar_homology is an independent oracle from the normalised bar complex.

#include <cstddef>
#include <string>
#include <vector>

#include "relhom/foxmagnus.hpp"
#include "relhom/presentations.hpp"
#include "relhom/zgmod.hpp"

namespace relhom {

  inline constexpr std::size_t default_column_budget = 20000;

  struct HomologyResult {
    std::size_t         n = 0;
    AbInvariants        invariants;
    IntVec              moduli;
    // generators[i] generates the i-th cyclic factor, as an ambient vector
    // of coinvariants(M (x) R_ab^n).
    std::vector<IntVec> kernel_lifts;
    PresentedAbGroup    coinvariants;
    // The induced Magnus map in untwisted (free) target coordinates.
    IntMat              magnus;
  };

  // Abelianisation from the relator exponent matrix.
  AbInvariants h1_trivial(Presentation const& p);

  // Throws BudgetExceeded when rank(M) (m d)^n > budget.
  HomologyResult h_even(PresentedGroup const& pg,
                        std::size_t           n,
                        ZGModule const&       m,
                        std::size_t           budget = default_column_budget);
  HomologyResult h_even(PresentedGroup const& pg,
                        std::size_t           n,
                        std::size_t           budget = default_column_budget);

  // Hopf: kernel of H_0(R_ab) -> Z^d, b -> exponent sums of b.
  AbInvariants hopf_h2(PresentedGroup const& pg);

  // U . (id_M (x) mu^n): the induced Magnus map on coinvariants, with the
  // target H_0(M (x) (ZG^d)^n) untwisted to a free group.
  IntMat untwisted_magnus_power(PresentedGroup const& pg,
                                ZGModule const&       m,
                                std::size_t           n,
                                std::size_t           budget = default_column_budget);

  // H_1(F, N) = kernel of N^d -> N, (v_s) -> sum_s (A_N(x_s)^-1 - I) v_s.
  // The inverse matches the untwisted coordinates [v (x) h e_s] -> h^-1 v.
  // Columns of the returned matrix are a basis of the kernel.
  IntMat h1_free(PresentedGroup const& pg, ZGModule const& n);

  struct FiveTermReport {
    std::size_t                n = 0;
    HomologyResult             h2n;
    AbInvariants               h0;        // H_0(G, N (x) R_ab)
    AbInvariants               h1_free;   // H_1(F, N)
    AbInvariants               h1_group;  // H_1(G, N)
    std::vector<StageCheck>    checks;

    bool pass() const;
  };

  // Builds all four groups and verifies exactness at every junction.
  // H_1(G, N) is also compared with bar_homology when m^2 rank(N) fits the
  // budget. Throws InvariantViolation if a check fails.
  FiveTermReport five_term(PresentedGroup const& pg,
                           ZGModule const&       m,
                           std::size_t           n,
                           std::size_t           budget = default_column_budget);

  // H_1(G, N) as the cokernel of H_0(G, N (x) R_ab) -> H_1(F, N).
  AbInvariants h1_group(PresentedGroup const& pg,
                        ZGModule const&       n,
                        std::size_t           budget = default_column_budget);

  // H_2n+1(G, Z) = H_1(G, R_ab^n).
  AbInvariants h_odd(PresentedGroup const& pg,
                     std::size_t           n,
                     std::size_t           budget = default_column_budget);

  // H_k(G, M) from the normalised bar complex; throws BudgetExceeded when
  // m^(k+1) rank(M) > budget.
  AbInvariants bar_homology(CayleyGroup const& g,
                            ZGModule const&    m,
                            std::size_t        k,
                            std::size_t        budget = default_column_budget);

}  // namespace relhom
