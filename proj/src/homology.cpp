#include "relhom/homology.hpp"

#include "relhom/error.hpp"

namespace relhom {

  namespace {
    // Untwisting verifies bijectivity through an SNF of the full coinvariant
    // lattice; above this many columns that check is left to the tests.
    constexpr std::size_t untwist_verify_limit = 3000;

    void require_budget(std::size_t columns, std::size_t budget, char const* what) {
      if (columns > budget) {
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(columns)
                             + " columns exceed the budget of "
                             + std::to_string(budget));
      }
    }

    // Overflow-safe product for budget checks.
    std::size_t capped_product(std::size_t a, std::size_t b) {
      constexpr std::size_t cap = std::size_t(1) << 40;
      if (a == 0 || b == 0) {
        return 0;
      }
      return a > cap / b ? cap : a * b;
    }

    std::size_t capped_power(std::size_t base, std::size_t n) {
      std::size_t out = 1;
      for (std::size_t i = 0; i < n; ++i) {
        out = capped_product(out, base);
      }
      return out;
    }

    void require_group(PresentedGroup const& pg, ZGModule const& m) {
      if (m.group() != pg.group && !(*m.group() == *pg.group)) {
        throw Error("coefficient module is over a different group");
      }
    }

    ZGModule tensor_with_power(ZGModule const& m, ZGModule const& r, std::size_t n) {
      ZGModule out = m;
      for (std::size_t i = 0; i < n; ++i) {
        out = tensor(out, r);
      }
      return out;
    }

    IntMat kron_power(IntMat const& a, std::size_t n) {
      IntMat out = IntMat::identity(1);
      for (std::size_t i = 0; i < n; ++i) {
        out = kron(out, a);
      }
      return out;
    }

    PresentedAbGroup free_group(std::size_t rank) {
      return PresentedAbGroup(rank, IntMat(0, rank));
    }

    IntMat columns_of(std::vector<IntVec> const& vs, std::size_t rows) {
      std::vector<SparseVec> cols;
      for (auto const& v : vs) {
        cols.push_back(sparse::from_dense(v));
      }
      return IntMat::from_columns(rows, std::move(cols));
    }

    // untwist(N, d) . (id_N (x) mu): H_0(N (x) R_ab) -> H_1(F, N) inside N^d.
    IntMat five_term_middle(ZGModule const& n, IntMat const& mu, std::size_t d) {
      bool   verify = n.rank() * mu.rows() <= untwist_verify_limit;
      IntMat u      = untwist_free_coinvariants(n, d, verify);
      return u * kron(IntMat::identity(n.rank()), mu);
    }
  }  // namespace

  AbInvariants h1_trivial(Presentation const& p) {
    std::vector<SparseVec> rows;
    for (auto const& r : p.relators) {
      auto      sums = r.exponent_sums(p.num_generators);
      SparseVec row;
      for (std::size_t s = 0; s < sums.size(); ++s) {
        if (sums[s] != 0) {
          row.emplace_back(s, Int(static_cast<long>(sums[s])));
        }
      }
      rows.push_back(std::move(row));
    }
    return LatticeQuotient(p.num_generators, rows).invariants();
  }

  HomologyResult h_even(PresentedGroup const& pg,
                        std::size_t           n,
                        ZGModule const&       m,
                        std::size_t           budget) {
    if (n == 0) {
      throw Error("h_even: n must be at least 1");
    }
    require_group(pg, m);
    std::size_t d = pg.num_generators(), order = pg.order();
    require_budget(capped_product(m.rank(), capped_power(order * d, n)), budget, "h_even");

    RelationSequence seq = relation_sequence(pg);
    HomologyResult   out;
    out.n            = n;
    out.coinvariants = coinvariants(tensor_with_power(m, seq.relmod, n));
    out.magnus       = untwisted_magnus_power(pg, m, n, budget);

    InducedMap map(out.coinvariants, free_group(out.magnus.rows()), out.magnus);
    Subgroup   k     = kernel_of_induced(map);
    out.invariants   = k.invariants;
    out.moduli       = k.moduli;
    out.kernel_lifts = std::move(k.generators);
    for (auto const& lift : out.kernel_lifts) {
      if (!vec::is_zero(out.magnus.apply(lift))) {
        throw InvariantViolation("h_even: kernel lift not in the kernel");
      }
    }
    return out;
  }

  IntMat untwisted_magnus_power(PresentedGroup const& pg,
                                ZGModule const&       m,
                                std::size_t           n,
                                std::size_t           budget) {
    if (n == 0) {
      throw Error("untwisted_magnus_power: n must be at least 1");
    }
    require_group(pg, m);
    std::size_t d = pg.num_generators(), order = pg.order();
    require_budget(capped_product(m.rank(), capped_power(order * d, n)), budget,
                   "magnus power");
    RelationSequence seq    = relation_sequence(pg);
    ZGModule         twist  = tensor_with_power(m, regular_free_module(pg.group, d), n - 1);
    bool             verify = twist.rank() * order * d <= untwist_verify_limit;
    IntMat           u      = untwist_free_coinvariants(twist, d, verify);
    return u * kron(IntMat::identity(m.rank()), kron_power(seq.mu.matrix, n));
  }

  HomologyResult h_even(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    return h_even(pg, n, trivial_module(pg.group, 1), budget);
  }

  AbInvariants hopf_h2(PresentedGroup const& pg) {
    auto const& sd = pg.schreier;
    std::size_t d  = pg.num_generators();
    std::vector<IntVec> cols;
    for (auto const& b : sd.basis_words) {
      auto   sums = b.exponent_sums(d);
      IntVec col(d);
      for (std::size_t s = 0; s < d; ++s) {
        col[s] = static_cast<long>(sums[s]);
      }
      cols.push_back(std::move(col));
    }
    InducedMap map(coinvariants(relation_module(sd)), free_group(d), columns_of(cols, d));
    return kernel_of_induced(map).invariants;
  }

  namespace {
    IntMat h1_free_relation(PresentedGroup const& pg, ZGModule const& n) {
      std::size_t d = pg.num_generators(), r = n.rank();
      IntMat      psi(r, 0);
      IntMat const id = IntMat::identity(r);
      for (std::size_t s = 0; s < d; ++s) {
        psi = hstack(psi, n.action(pg.group->inv(pg.map.images[s])) - id);
      }
      return psi;
    }
  }  // namespace

  IntMat h1_free(PresentedGroup const& pg, ZGModule const& n) {
    require_group(pg, n);
    return kernel_basis(h1_free_relation(pg, n));
  }

  AbInvariants h1_group(PresentedGroup const& pg, ZGModule const& n, std::size_t budget) {
    require_group(pg, n);
    std::size_t d = pg.num_generators();
    require_budget(capped_product(n.rank(), pg.order() * d), budget, "h1_group");
    RelationSequence seq = relation_sequence(pg);
    IntMat           phi = five_term_middle(n, seq.mu.matrix, d);
    IntMat           psi = h1_free_relation(pg, n);
    // ker psi / im phi, computed as the kernel of psi on Z^{Nd} / im phi.
    InducedMap map(PresentedAbGroup(phi.rows(), phi.transpose()), free_group(psi.rows()), psi);
    return kernel_of_induced(map).invariants;
  }

  bool FiveTermReport::pass() const {
    for (auto const& c : checks) {
      if (!c.pass) {
        return false;
      }
    }
    return true;
  }

  FiveTermReport five_term(PresentedGroup const& pg,
                           ZGModule const&       m,
                           std::size_t           n,
                           std::size_t           budget) {
    if (n == 0) {
      throw Error("five_term: n must be at least 1");
    }
    FiveTermReport report;
    report.n   = n;
    report.h2n = h_even(pg, n, m, budget);

    std::size_t      d   = pg.num_generators();
    RelationSequence seq = relation_sequence(pg);
    ZGModule         nn  = tensor_with_power(m, seq.relmod, n - 1);
    auto const&      h0  = report.h2n.coinvariants;
    report.h0            = h0.invariants();

    IntMat phi = five_term_middle(nn, seq.mu.matrix, d);
    IntMat psi = h1_free_relation(pg, nn);
    IntMat k   = kernel_basis(psi);
    report.h1_free = AbInvariants{k.cols(), {}};

    // H_2n -> H_0 is injective: the lifts generate a copy of H_2n.
    {
      std::size_t  g = report.h2n.kernel_lifts.size();
      InducedMap   inc(free_group(g), h0, columns_of(report.h2n.kernel_lifts, h0.ambient()));
      AbInvariants sub = image_of_induced(inc);
      report.checks.push_back({"H_2n embeds in H_0", sub == report.h2n.invariants, {},
                               sub.to_string() + " vs " + report.h2n.invariants.to_string()});
    }
    // Exact at H_0: the kernel of the middle map is the H_2n subgroup.
    {
      Subgroup kernel = kernel_of_induced(InducedMap(h0, free_group(phi.rows()), phi));
      bool     same   = kernel.invariants == report.h2n.invariants
                  && same_subgroup(h0, kernel.generators, report.h2n.kernel_lifts);
      report.checks.push_back({"exact at H_0(G, N (x) R_ab)", same, {},
                               "kernel " + kernel.invariants.to_string()});
    }
    // Exact at H_1(F, N): the middle map lands in H_1(F, N); H_1(G, N) is
    // its cokernel there.
    {
      bool lands = (psi * phi).is_zero();
      report.checks.push_back({"image lies in H_1(F, N)", lands, {}, ""});
      InducedMap map(PresentedAbGroup(phi.rows(), phi.transpose()), free_group(psi.rows()),
                     psi);
      report.h1_group = kernel_of_induced(map).invariants;
    }
    // H_1(G, N) against the bar complex, when affordable.
    if (capped_product(capped_power(pg.order(), 2), nn.rank()) <= budget) {
      AbInvariants bar = bar_homology(*pg.group, nn, 1, budget);
      report.checks.push_back({"H_1(G, N) agrees with the bar complex",
                               bar == report.h1_group, {}, "bar " + bar.to_string()});
    }
    for (auto const& c : report.checks) {
      if (!c.pass) {
        throw InvariantViolation("five_term: check failed: " + c.name + " (" + c.detail
                                 + ")");
      }
    }
    return report;
  }

  AbInvariants h_odd(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    if (n == 0) {
      return h1_trivial(pg.presentation);
    }
    RelationSequence seq = relation_sequence(pg);
    std::size_t      d   = pg.num_generators();
    require_budget(capped_product(capped_power(seq.relmod.rank(), n), pg.order() * d),
                   budget, "h_odd");
    return h1_group(pg, tensor_power(seq.relmod, n), budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Bar complex
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // d_k : C_k (x) M -> C_{k-1} (x) M on normalised cells. A cell
    // [g_1|...|g_k] of non-identity elements has index
    // sum (g_i - 1) (m-1)^(k-i); the M coordinate is the minor index.
    IntMat bar_differential(CayleyGroup const& g, ZGModule const& mod, std::size_t k) {
      std::size_t m = g.order(), r = mod.rank(), b = m - 1;
      std::size_t src_cells = capped_power(b, k);
      std::size_t tgt_cells = k == 0 ? 0 : capped_power(b, k - 1);
      IntMat      out(tgt_cells * r, src_cells * r);
      if (k == 0 || b == 0) {
        return out;
      }
      std::vector<element_index> cell(k), face;
      auto encode = [&](std::vector<element_index> const& c) {
        std::size_t idx = 0;
        for (auto e : c) {
          idx = idx * b + (e - 1);
        }
        return idx;
      };
      std::vector<SparseVec>              columns(src_cells * r);
      for (std::size_t c = 0; c < src_cells; ++c) {
        std::size_t rest = c;
        for (std::size_t i = k; i-- > 0;) {
          cell[i] = static_cast<element_index>(rest % b + 1);
          rest /= b;
        }
        // Terms as (target cell, sign, acting element).
        std::vector<std::tuple<std::size_t, int, element_index>> terms;
        face.assign(cell.begin() + 1, cell.end());
        terms.emplace_back(encode(face), 1, g.inv(cell[0]));
        for (std::size_t i = 0; i + 1 < k; ++i) {
          element_index prod = g.mul(cell[i], cell[i + 1]);
          if (prod == g.identity()) {
            continue;
          }
          face.assign(cell.begin(), cell.end());
          face[i] = prod;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          terms.emplace_back(encode(face), (i + 1) % 2 == 0 ? 1 : -1, g.identity());
        }
        face.assign(cell.begin(), cell.end() - 1);
        terms.emplace_back(encode(face), k % 2 == 0 ? 1 : -1, g.identity());

        for (std::size_t i = 0; i < r; ++i) {
          IntVec col(tgt_cells * r);
          for (auto const& [t, sign, act] : terms) {
            for (auto const& [row, v] : mod.action(act).column(i)) {
              col[t * r + row] += sign * v;
            }
          }
          columns[c * r + i] = sparse::from_dense(col);
        }
      }
      return IntMat::from_columns(tgt_cells * r, std::move(columns));
    }
  }  // namespace

  AbInvariants bar_homology(CayleyGroup const& g,
                            ZGModule const&    mod,
                            std::size_t        k,
                            std::size_t        budget) {
    if (!(g == *mod.group())) {
      throw Error("bar_homology: module is over a different group");
    }
    require_budget(capped_product(capped_power(g.order(), k + 1), mod.rank()), budget,
                   "bar_homology");
    IntMat           dk  = bar_differential(g, mod, k);
    IntMat           dk1 = bar_differential(g, mod, k + 1);
    PresentedAbGroup cycles_mod(dk.cols(), dk1.transpose());
    InducedMap       map(cycles_mod, free_group(dk.rows()), dk);
    return kernel_of_induced(map).invariants;
  }

}  // namespace relhom
