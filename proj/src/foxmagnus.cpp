#include "relhom/foxmagnus.hpp"

#include "relhom/error.hpp"

namespace relhom {

  GroupRingElement fox_derivative(Word const&        w,
                                  std::uint32_t      s,
                                  QuotientMap const& q,
                                  CayleyGroup const& g) {
    std::vector<long> acc(g.order(), 0);
    element_index     prefix = g.identity();
    for (auto const& l : w.letters()) {
      element_index y = q.images.at(l.gen);
      if (l.exp > 0) {
        for (std::int64_t k = 0; k < l.exp; ++k) {
          if (l.gen == s) {
            ++acc[prefix];
          }
          prefix = g.mul(prefix, y);
        }
      } else {
        element_index yinv = g.inv(y);
        for (std::int64_t k = 0; k < -l.exp; ++k) {
          prefix = g.mul(prefix, yinv);
          if (l.gen == s) {
            --acc[prefix];
          }
        }
      }
    }
    return GroupRingElement(acc.begin(), acc.end());
  }

  IntVec fox_gradient(Word const& w, QuotientMap const& q, CayleyGroup const& g) {
    IntVec out;
    out.reserve(q.images.size() * g.order());
    for (std::uint32_t s = 0; s < q.images.size(); ++s) {
      auto d = fox_derivative(w, s, q, g);
      out.insert(out.end(), d.begin(), d.end());
    }
    return out;
  }

  ZGModule relation_module(SchreierData const& sd) {
    auto const& g = *sd.group;
    std::size_t m = g.order(), r = sd.rank;
    std::vector<IntMat> action;
    action.reserve(m);
    for (element_index h = 0; h < m; ++h) {
      Word const&            t = sd.transversal[h];
      std::vector<SparseVec> cols;
      cols.reserve(r);
      for (auto const& b : sd.basis_words) {
        cols.push_back(sparse::from_dense(rewrite_in_R(sd, t * b * t.inverse())));
      }
      action.push_back(IntMat::from_columns(r, std::move(cols)));
    }
    // The action must not depend on the chosen lift.
    for (std::uint32_t s = 0; s < sd.num_generators(); ++s) {
      Word          x   = Word::generator(s);
      IntMat const& act = action[sd.map.images[s]];
      for (std::size_t i = 0; i < r; ++i) {
        auto col = rewrite_in_R(sd, x * sd.basis_words[i] * x.inverse());
        if (sparse::from_dense(col) != act.column(i)) {
          throw InvariantViolation("relation_module: action depends on the lift");
        }
      }
    }
    Word const& b0 = sd.basis_words.at(0);
    for (element_index h = 0; h < m; ++h) {
      Word lift = sd.transversal[h] * b0;
      for (std::size_t i = 0; i < r; ++i) {
        auto col = rewrite_in_R(sd, lift * sd.basis_words[i] * lift.inverse());
        if (sparse::from_dense(col) != action[h].column(i)) {
          throw InvariantViolation("relation_module: action depends on the lift");
        }
      }
    }
    return ZGModule(sd.group, r, std::move(action));
  }

  ZGMap magnus_map(SchreierData const& sd, ZGModule const& relmod) {
    auto const&            g = *sd.group;
    std::size_t            d = sd.num_generators();
    std::vector<SparseVec> cols;
    cols.reserve(sd.rank);
    for (auto const& b : sd.basis_words) {
      cols.push_back(sparse::from_dense(fox_gradient(b, sd.map, g)));
    }
    IntMat mat = IntMat::from_columns(d * g.order(), std::move(cols));
    if (kernel_basis(mat).cols() != 0) {
      throw InvariantViolation("magnus_map: mu is not injective");
    }
    return ZGMap(relmod, regular_free_module(sd.group, d), std::move(mat));
  }

  RelationSequence relation_sequence(PresentedGroup const& pg) {
    auto const& g = *pg.group;
    std::size_t m = g.order(), d = pg.num_generators();
    ZGModule    relmod = relation_module(pg.schreier);
    ZGMap       mu     = magnus_map(pg.schreier, relmod);

    std::vector<SparseVec> scols(d * m);
    for (std::size_t s = 0; s < d; ++s) {
      for (element_index h = 0; h < m; ++h) {
        element_index hs = g.mul(h, pg.map.images[s]);
        if (hs != h) {
          scols[s * m + h] = h < hs ? SparseVec{{h, Int(-1)}, {hs, Int(1)}}
                                    : SparseVec{{hs, Int(1)}, {h, Int(-1)}};
        }
      }
    }
    ZGModule zg = regular_free_module(pg.group, 1);
    ZGMap    sigma(mu.target, zg, IntMat::from_columns(m, std::move(scols)));

    IntMat eps(1, m);
    for (element_index h = 0; h < m; ++h) {
      eps.set(0, h, 1);
    }
    ZGMap epsilon(zg, trivial_module(pg.group, 1), std::move(eps));
    return {std::move(relmod), std::move(mu), std::move(sigma), std::move(epsilon)};
  }

  bool SequenceReport::pass() const {
    for (auto const& s : stages) {
      if (!s.pass) {
        return false;
      }
    }
    return true;
  }

  namespace {
    IntVec column_dense(IntMat const& a, std::size_t c) {
      return sparse::to_dense(a.column(c), a.rows());
    }

    // ker(after) = im(before), by mutual containment.
    StageCheck exact_at(std::string name, IntMat const& before, IntMat const& after) {
      StageCheck check{std::move(name), true, {}, ""};
      IntMat     comp = after * before;
      for (std::size_t c = 0; c < comp.cols(); ++c) {
        if (!comp.column(c).empty()) {
          check.witnesses.push_back(column_dense(before, c));
        }
      }
      IntMat k = kernel_basis(after);
      for (std::size_t c = 0; c < k.cols(); ++c) {
        IntVec v = column_dense(k, c);
        if (!solve_in_lattice(before, v)) {
          check.witnesses.push_back(v);
        }
      }
      check.pass = check.witnesses.empty();
      return check;
    }
  }  // namespace

  SequenceReport verify_relation_sequence(RelationSequence const& seq) {
    SequenceReport report;

    StageCheck inj{"mu injective", true, {}, ""};
    IntMat     k = kernel_basis(seq.mu.matrix);
    for (std::size_t c = 0; c < k.cols(); ++c) {
      inj.witnesses.push_back(column_dense(k, c));
    }
    inj.pass = inj.witnesses.empty();
    report.stages.push_back(std::move(inj));

    report.stages.push_back(
        exact_at("ker sigma = im mu", seq.mu.matrix, seq.sigma.matrix));
    report.stages.push_back(
        exact_at("ker eps = im sigma", seq.sigma.matrix, seq.epsilon.matrix));

    StageCheck surj{"eps surjective", true, {}, ""};
    if (!cokernel_invariants(seq.epsilon.matrix.transpose()).is_zero()) {
      surj.pass = false;
      surj.witnesses.push_back(IntVec{1});
    }
    report.stages.push_back(std::move(surj));
    return report;
  }

  SequenceReport verify_relation_sequence(PresentedGroup const& pg) {
    return verify_relation_sequence(relation_sequence(pg));
  }

}  // namespace relhom
