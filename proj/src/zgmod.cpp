#include "relhom/zgmod.hpp"

#include "relhom/error.hpp"

namespace relhom {

  ////////////////////////////////////////////////////////////////////////
  // Modules
  ////////////////////////////////////////////////////////////////////////

  ZGModule ZGModule::unchecked(GroupPtr group, std::size_t rank, std::vector<IntMat> action) {
    if (!group) {
      throw Error("ZGModule: missing group");
    }
    if (action.size() != group->order()) {
      throw InvariantViolation("ZGModule: need one action matrix per element");
    }
    for (auto const& a : action) {
      if (a.rows() != rank || a.cols() != rank) {
        throw InvariantViolation("ZGModule: action matrix has wrong shape");
      }
    }
    ZGModule out;
    out._group  = std::move(group);
    out._rank   = rank;
    out._action = std::make_shared<std::vector<IntMat> const>(std::move(action));
    return out;
  }

  ZGModule::ZGModule(GroupPtr group, std::size_t rank, std::vector<IntMat> action) {
    *this = unchecked(std::move(group), rank, std::move(action));
    validate();
  }

  void ZGModule::validate() const {
    auto const& g = *_group;
    std::size_t m = g.order();
    if (!(action(g.identity()) == IntMat::identity(_rank))) {
      throw InvariantViolation("ZGModule: identity does not act trivially");
    }
    auto check = [&](element_index a, element_index b) {
      if (!(action(a) * action(b) == action(g.mul(a, b)))) {
        throw InvariantViolation("ZGModule: action is not a homomorphism");
      }
    };
    if (m * _rank * _rank <= 1'000'000) {
      for (element_index a = 0; a < m; ++a) {
        for (element_index b = 0; b < m; ++b) {
          check(a, b);
        }
      }
    } else {
      for (element_index a = 0; a < m; ++a) {
        for (auto s : g.generators()) {
          check(a, s);
        }
      }
    }
  }

  ZGModule module_from_generators(GroupPtr                          group,
                                  std::vector<element_index> const& generator_images,
                                  std::vector<IntMat> const&        generator_actions) {
    if (generator_images.size() != generator_actions.size() || generator_actions.empty()) {
      throw Error("module_from_generators: need one matrix per generator");
    }
    std::size_t rank = generator_actions.front().rows();
    for (auto const& a : generator_actions) {
      if (a.rows() != rank || a.cols() != rank) {
        throw Error("module_from_generators: action matrices must be square of equal size");
      }
    }
    std::size_t                m = group->order();
    std::vector<IntMat>        action(m);
    std::vector<bool>          seen(m, false);
    std::vector<element_index> queue{group->identity()};
    action[group->identity()] = IntMat::identity(rank);
    seen[group->identity()]   = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      element_index g = queue[head];
      for (std::size_t s = 0; s < generator_images.size(); ++s) {
        element_index h = group->mul(g, generator_images[s]);
        if (!seen[h]) {
          seen[h]   = true;
          action[h] = action[g] * generator_actions[s];
          queue.push_back(h);
        }
      }
    }
    if (queue.size() != m) {
      throw InvariantViolation("module_from_generators: images do not generate the group");
    }
    return ZGModule(std::move(group), rank, std::move(action));
  }

  ZGModule trivial_module(GroupPtr group, std::size_t k) {
    std::vector<IntMat> action(group->order(), IntMat::identity(k));
    return ZGModule::unchecked(std::move(group), k, std::move(action));
  }

  ZGModule regular_free_module(GroupPtr group, std::size_t k) {
    std::size_t         m = group->order();
    std::vector<IntMat> action;
    action.reserve(m);
    for (element_index g = 0; g < m; ++g) {
      std::vector<SparseVec> cols(m * k);
      for (std::size_t slot = 0; slot < k; ++slot) {
        for (element_index h = 0; h < m; ++h) {
          cols[slot * m + h] = {{slot * m + group->mul(g, h), Int(1)}};
        }
      }
      action.push_back(IntMat::from_columns(m * k, std::move(cols)));
    }
    return ZGModule::unchecked(std::move(group), m * k, std::move(action));
  }

  namespace {
    void require_same_group(ZGModule const& a, ZGModule const& b, char const* what) {
      if (a.group() != b.group() && !(*a.group() == *b.group())) {
        throw Error(std::string(what) + ": modules over different groups");
      }
    }
  }  // namespace

  ZGModule tensor(ZGModule const& a, ZGModule const& b) {
    require_same_group(a, b, "tensor");
    std::size_t         m = a.group()->order();
    std::vector<IntMat> action;
    action.reserve(m);
    for (element_index g = 0; g < m; ++g) {
      action.push_back(kron(a.action(g), b.action(g)));
    }
    return ZGModule::unchecked(a.group(), a.rank() * b.rank(), std::move(action));
  }

  ZGModule direct_sum(ZGModule const& a, ZGModule const& b) {
    require_same_group(a, b, "direct_sum");
    std::size_t         m = a.group()->order();
    std::vector<IntMat> action;
    action.reserve(m);
    for (element_index g = 0; g < m; ++g) {
      action.push_back(block_diagonal(a.action(g), b.action(g)));
    }
    return ZGModule::unchecked(a.group(), a.rank() + b.rank(), std::move(action));
  }

  ZGModule tensor_power(ZGModule const& m, std::size_t n) {
    if (n == 0) {
      return trivial_module(m.group(), 1);
    }
    ZGModule out = m;
    for (std::size_t i = 1; i < n; ++i) {
      out = tensor(out, m);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  ZGMap::ZGMap(ZGModule src, ZGModule tgt, IntMat mat)
      : source(std::move(src)), target(std::move(tgt)), matrix(std::move(mat)) {
    require_same_group(source, target, "ZGMap");
    if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) {
      throw InvariantViolation("ZGMap: matrix has wrong shape");
    }
    std::size_t m = source.group()->order();
    for (element_index g = 0; g < m; ++g) {
      if (!(matrix * source.action(g) == target.action(g) * matrix)) {
        throw InvariantViolation("ZGMap: matrix is not equivariant");
      }
    }
  }

  ZGMap compose(ZGMap const& second, ZGMap const& first) {
    if (first.target.rank() != second.source.rank()) {
      throw Error("compose: ranks do not match");
    }
    return ZGMap(first.source, second.target, second.matrix * first.matrix);
  }

  ZGMap tensor(ZGMap const& f, ZGMap const& g) {
    return ZGMap(tensor(f.source, g.source), tensor(f.target, g.target),
                 kron(f.matrix, g.matrix));
  }

  ZGMap identity_map(ZGModule const& m) {
    return ZGMap(m, m, IntMat::identity(m.rank()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Presented abelian groups
  ////////////////////////////////////////////////////////////////////////

  PresentedAbGroup::PresentedAbGroup(std::size_t ambient, IntMat relations)
      : _ambient(ambient), _relations(std::move(relations)) {
    if (_relations.cols() != ambient) {
      throw Error("PresentedAbGroup: relation rows have wrong length");
    }
    _quotient = std::make_shared<LatticeQuotient const>(_relations);
  }

  namespace {
    PresentedAbGroup coinvariants_over(ZGModule const&                   m,
                                       std::vector<element_index> const& elements) {
      std::size_t            r = m.rank();
      std::vector<SparseVec> rows;
      IntMat const           id = IntMat::identity(r);
      for (auto g : elements) {
        if (g == m.group()->identity()) {
          continue;
        }
        IntMat diff = m.action(g) - id;
        for (std::size_t i = 0; i < r; ++i) {
          if (!diff.column(i).empty()) {
            rows.push_back(diff.column(i));
          }
        }
      }
      return PresentedAbGroup(r, IntMat::from_rows(r, rows));
    }
  }  // namespace

  PresentedAbGroup coinvariants(ZGModule const& m) {
    return coinvariants_over(m, m.group()->generators());
  }

  PresentedAbGroup coinvariants_all_elements(ZGModule const& m) {
    std::vector<element_index> all(m.group()->order());
    for (element_index g = 0; g < all.size(); ++g) {
      all[g] = g;
    }
    return coinvariants_over(m, all);
  }

  InducedMap::InducedMap(PresentedAbGroup src, PresentedAbGroup tgt, IntMat mat)
      : source(std::move(src)), target(std::move(tgt)), matrix(std::move(mat)) {
    if (matrix.rows() != target.ambient() || matrix.cols() != source.ambient()) {
      throw InvariantViolation("InducedMap: matrix has wrong shape");
    }
    for (auto const& row : source.relations().row_vectors()) {
      if (!target.quotient().contains(matrix.apply(row))) {
        throw InvariantViolation(
            "InducedMap: a source relation is not sent into the target lattice");
      }
    }
  }

  InducedMap induced_coinvariant_map(ZGMap const& f) {
    return InducedMap(coinvariants(f.source), coinvariants(f.target), f.matrix);
  }

  ////////////////////////////////////////////////////////////////////////
  // Kernels, images, torsion
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<std::size_t> torsion_components(IntVec const& moduli) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (sgn(moduli[i]) != 0) {
          out.push_back(i);
        }
      }
      return out;
    }

    // Everything about an induced map in reduced coordinates: the source is
    // Z^ns / diag(d), the target Z^nt / diag(e), and F sends source
    // component j to the target coordinates of f(section_j).
    struct Reduced {
      IntVec source_moduli;
      IntVec target_moduli;
      IntMat f;  // nt x ns

      // A basis (columns) of L = {x in Z^ns : F x = 0 in the target}.
      IntMat preimage_basis() const {
        std::size_t ns = source_moduli.size(), nt = target_moduli.size();
        auto        tor = torsion_components(target_moduli);
        IntMat      ext(nt, tor.size());
        for (std::size_t k = 0; k < tor.size(); ++k) {
          ext.set(tor[k], k, target_moduli[tor[k]]);
        }
        // Kernel vectors (x, y) of [F | diag(e_tor)] project injectively to
        // x, so the projected kernel basis is a basis of L.
        IntMat                 k = kernel_basis(hstack(f, ext));
        std::vector<SparseVec> cols;
        for (std::size_t c = 0; c < k.cols(); ++c) {
          SparseVec x;
          for (auto const& [i, v] : k.column(c)) {
            if (i < ns) {
              x.emplace_back(i, v);
            }
          }
          cols.push_back(std::move(x));
        }
        return IntMat::from_columns(ns, std::move(cols));
      }
    };

    Reduced reduce_map(InducedMap const& map) {
      auto const& sq = map.source.quotient();
      auto const& tq = map.target.quotient();
      Reduced     r;
      r.source_moduli = sq.moduli();
      r.target_moduli = tq.moduli();
      std::vector<SparseVec> cols;
      for (std::size_t j = 0; j < sq.num_components(); ++j) {
        cols.push_back(sparse::from_dense(tq.coordinates(map.matrix.apply(sq.section(j)))));
      }
      r.f = IntMat::from_columns(tq.num_components(), std::move(cols));
      return r;
    }

    IntVec lift(LatticeQuotient const& q, IntVec const& reduced) {
      IntVec out(q.ambient());
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (sgn(reduced[j]) != 0) {
          out = vec::add(out, vec::scale(reduced[j], q.section(j)));
        }
      }
      return out;
    }
  }  // namespace

  Subgroup kernel_of_induced(InducedMap const& map) {
    Reduced     r     = reduce_map(map);
    IntMat      basis = r.preimage_basis();
    std::size_t rank  = basis.cols();
    // Express the source relations d_j e_j in the basis of L.
    std::vector<SparseVec> rows;
    for (auto j : torsion_components(r.source_moduli)) {
      IntVec target = vec::scale(r.source_moduli[j], vec::unit(r.source_moduli.size(), j));
      auto   c      = solve_in_lattice(basis, target);
      if (!c) {
        throw InvariantViolation("kernel_of_induced: induced map is not well defined");
      }
      rows.push_back(sparse::from_dense(*c));
    }
    LatticeQuotient k(rank, rows);
    Subgroup        out;
    out.invariants = k.invariants();
    out.moduli     = k.moduli();
    for (std::size_t i = 0; i < k.num_components(); ++i) {
      out.generators.push_back(lift(map.source.quotient(), basis.apply(k.section(i))));
    }
    return out;
  }

  AbInvariants image_of_induced(InducedMap const& map) {
    Reduced r     = reduce_map(map);
    IntMat  basis = r.preimage_basis();
    return cokernel_invariants(basis.transpose());
  }

  AbInvariants cokernel_of_induced(InducedMap const& map) {
    Reduced     r  = reduce_map(map);
    std::size_t nt = r.target_moduli.size();
    IntMat      rel = r.f.transpose();
    std::vector<SparseVec> rows = rel.row_vectors();
    for (auto k : torsion_components(r.target_moduli)) {
      rows.push_back({{k, r.target_moduli[k]}});
    }
    return LatticeQuotient(nt, rows).invariants();
  }

  Subgroup torsion_subgroup(PresentedAbGroup const& p) {
    auto const& q = p.quotient();
    Subgroup    out;
    for (auto j : torsion_components(q.moduli())) {
      out.moduli.push_back(q.moduli()[j]);
      out.generators.push_back(q.section(j));
    }
    out.invariants = canonical_invariants(out.moduli);
    return out;
  }

  Subgroup n_torsion(PresentedAbGroup const& p, Int const& n) {
    if (sgn(n) <= 0) {
      throw Error("n_torsion: n must be positive");
    }
    auto const& q = p.quotient();
    Subgroup    out;
    IntVec      orders;
    for (std::size_t j = 0; j < q.num_components(); ++j) {
      Int d = q.moduli()[j];
      if (sgn(d) == 0) {
        continue;
      }
      Int g = gcd(n, d);
      if (g == 1) {
        continue;
      }
      orders.push_back(g);
      out.moduli.push_back(g);
      out.generators.push_back(vec::scale(Int(d / g), q.section(j)));
    }
    out.invariants = canonical_invariants(orders);
    return out;
  }

  bool is_n_torsion(PresentedAbGroup const& p, Int const& n, IntVec const& x) {
    return p.contains(vec::scale(n, x));
  }

  bool subgroup_contains(PresentedAbGroup const&    p,
                         std::vector<IntVec> const& gens,
                         IntVec const&              x) {
    auto const&            q = p.quotient();
    std::size_t            n = q.num_components();
    std::vector<SparseVec> cols;
    for (auto const& g : gens) {
      cols.push_back(sparse::from_dense(q.coordinates(g)));
    }
    for (auto j : torsion_components(q.moduli())) {
      cols.push_back({{j, q.moduli()[j]}});
    }
    return solve_in_lattice(IntMat::from_columns(n, std::move(cols)), q.coordinates(x))
        .has_value();
  }

  bool same_subgroup(PresentedAbGroup const&    p,
                     std::vector<IntVec> const& a,
                     std::vector<IntVec> const& b) {
    for (auto const& x : a) {
      if (!subgroup_contains(p, b, x)) {
        return false;
      }
    }
    for (auto const& x : b) {
      if (!subgroup_contains(p, a, x)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Untwisting
  ////////////////////////////////////////////////////////////////////////

  IntMat untwist_free_coinvariants(ZGModule const& mod, std::size_t k, bool verify) {
    auto const& g = *mod.group();
    std::size_t m = g.order(), r = mod.rank();
    // Tensor index a * (m k) + slot * m + h stands for e_a (x) h e_slot.
    std::vector<SparseVec> cols(r * m * k);
    for (element_index h = 0; h < m; ++h) {
      IntMat const& act = mod.action(g.inv(h));
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t slot = 0; slot < k; ++slot) {
          SparseVec col;
          for (auto const& [row, v] : act.column(a)) {
            col.emplace_back(slot * r + row, v);
          }
          cols[a * m * k + slot * m + h] = std::move(col);
        }
      }
    }
    IntMat u = IntMat::from_columns(r * k, std::move(cols));
    if (verify) {
      InducedMap map(coinvariants(tensor(mod, regular_free_module(mod.group(), k))),
                     PresentedAbGroup(r * k, IntMat(0, r * k)), u);
      if (!kernel_of_induced(map).invariants.is_zero()
          || !cokernel_of_induced(map).is_zero()) {
        throw InvariantViolation("untwist_free_coinvariants: map is not bijective");
      }
    }
    return u;
  }

}  // namespace relhom
