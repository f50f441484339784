#include "relhom/prescat.hpp"

#include <algorithm>
#include <string>

#include "relhom/error.hpp"

namespace relhom {

  namespace {
    bool same_group(PresentedGroup const& a, PresentedGroup const& b) {
      return a.group == b.group || *a.group == *b.group;
    }

    void require_budget(std::size_t columns, std::size_t budget, char const* what) {
      if (columns > budget) {
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(columns)
                             + " columns exceed the budget of " + std::to_string(budget));
      }
    }

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

    IntMat kron_power(IntMat const& a, std::size_t n) {
      IntMat out = IntMat::identity(1);
      for (std::size_t i = 0; i < n; ++i) {
        out = kron(out, a);
      }
      return out;
    }

    ZGModule with_power(ZGModule const& m, ZGModule const& r, std::size_t n) {
      ZGModule out = m;
      for (std::size_t i = 0; i < n; ++i) {
        out = tensor(out, r);
      }
      return out;
    }

    // id_M (x) f^n
    IntMat coefficient_power(ZGModule const& m, IntMat const& f, std::size_t n) {
      return kron(IntMat::identity(m.rank()), kron_power(f, n));
    }

    std::vector<IntVec> columns(IntMat const& a) {
      std::vector<IntVec> out;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        out.push_back(sparse::to_dense(a.column(j), a.rows()));
      }
      return out;
    }

    CategoryReport finish(CategoryReport report, char const* what) {
      for (auto const& c : report.checks) {
        if (!c.pass) {
          throw InvariantViolation(std::string(what) + ": " + c.name + " fails ("
                                   + c.detail + ")");
        }
      }
      return report;
    }

    // Block inclusion ZG^d -> ZG^total placing slot s at slot offset + s.
    IntMat slot_inclusion(std::size_t m, std::size_t d, std::size_t offset, std::size_t total) {
      std::vector<SparseVec> cols;
      for (std::size_t i = 0; i < d * m; ++i) {
        cols.push_back({{offset * m + i, Int(1)}});
      }
      return IntMat::from_columns(total * m, std::move(cols));
    }
  }  // namespace

  PresentedGroup attach_by_words(Presentation const&      p,
                                 PresentedGroup const&    base,
                                 std::vector<Word> const& images) {
    if (images.size() != p.num_generators) {
      throw Error("attach_by_words: need one image per generator");
    }
    QuotientMap q;
    for (auto const& w : images) {
      q.images.push_back(evaluate(base.map, *base.group, w));
    }
    return attach(p, base.group, std::move(q));
  }

  Word substitute(Word const& w, std::vector<Word> const& images) {
    Word out;
    for (auto const& l : w.letters()) {
      if (l.gen >= images.size()) {
        throw Error("substitute: generator out of range");
      }
      out = out * images[l.gen].pow(l.exp);
    }
    return out;
  }

  PresMorphism::PresMorphism(PresentedGroup src, PresentedGroup tgt, std::vector<Word> imgs)
      : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
    if (!same_group(source, target)) {
      throw Error("PresMorphism: presentations of different groups");
    }
    if (images.size() != source.num_generators()) {
      throw Error("PresMorphism: need one image per source generator");
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (auto const& l : images[i].letters()) {
        if (l.gen >= target.num_generators()) {
          throw Error("PresMorphism: image mentions an unknown generator");
        }
      }
      if (evaluate(target.map, *target.group, images[i]) != source.map.images[i]) {
        throw InvariantViolation("PresMorphism: generator " + std::to_string(i)
                                 + " is not sent over its image in G");
      }
    }
  }

  PresMorphism identity_morphism(PresentedGroup const& p) {
    std::vector<Word> images;
    for (std::uint32_t s = 0; s < p.num_generators(); ++s) {
      images.push_back(Word::generator(s));
    }
    return PresMorphism(p, p, std::move(images));
  }

  PresMorphism compose(PresMorphism const& second, PresMorphism const& first) {
    std::vector<Word> images;
    for (auto const& w : first.images) {
      images.push_back(substitute(w, second.images));
    }
    return PresMorphism(first.source, second.target, std::move(images));
  }

  PresMorphism find_morphism(PresentedGroup const& source, PresentedGroup const& target) {
    if (!same_group(source, target)) {
      throw Error("find_morphism: presentations of different groups");
    }
    std::vector<Word> images;
    for (auto g : source.map.images) {
      images.push_back(target.schreier.transversal[g]);
    }
    return PresMorphism(source, target, std::move(images));
  }

  Coproduct coproduct(PresentedGroup const& a, PresentedGroup const& b) {
    if (!same_group(a, b)) {
      throw Error("coproduct: presentations of different groups");
    }
    std::uint32_t const d = static_cast<std::uint32_t>(a.num_generators());
    Presentation        p;
    p.num_generators  = a.num_generators() + b.num_generators();
    p.generator_names = a.presentation.generator_names;
    for (auto name : b.presentation.generator_names) {
      while (std::find(p.generator_names.begin(), p.generator_names.end(), name)
             != p.generator_names.end()) {
        name += "'";
      }
      p.generator_names.push_back(name);
    }
    p.relators = a.presentation.relators;
    std::vector<Word> shift;
    for (std::uint32_t s = 0; s < b.num_generators(); ++s) {
      shift.push_back(Word::generator(d + s));
    }
    for (auto const& r : b.presentation.relators) {
      p.relators.push_back(substitute(r, shift));
    }
    QuotientMap q = a.map;
    q.images.insert(q.images.end(), b.map.images.begin(), b.map.images.end());

    Coproduct out;
    out.object = attach(p, a.group, std::move(q));
    std::vector<Word> first;
    for (std::uint32_t s = 0; s < d; ++s) {
      first.push_back(Word::generator(s));
    }
    out.first  = PresMorphism(a, out.object, std::move(first));
    out.second = PresMorphism(b, out.object, std::move(shift));
    return out;
  }

  PresMorphism copair(Coproduct const& c, PresMorphism const& f, PresMorphism const& g) {
    if (f.target.presentation.relators != g.target.presentation.relators
        || f.target.map.images != g.target.map.images) {
      throw Error("copair: the two morphisms have different targets");
    }
    std::vector<Word> images = f.images;
    images.insert(images.end(), g.images.begin(), g.images.end());
    return PresMorphism(c.object, f.target, std::move(images));
  }

  ZGMap induced_relmod_map(PresMorphism const& phi) {
    ZGModule            src = relation_module(phi.source.schreier);
    ZGModule            tgt = relation_module(phi.target.schreier);
    std::vector<SparseVec> cols;
    for (auto const& b : phi.source.schreier.basis_words) {
      cols.push_back(sparse::from_dense(rewrite_in_R(phi.target.schreier, substitute(b, phi.images))));
    }
    return ZGMap(src, tgt, IntMat::from_columns(tgt.rank(), std::move(cols)));
  }

  bool CategoryReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.pass; });
  }

  CategoryReport splitting_check(PresentedGroup const& a, PresentedGroup const& b) {
    Coproduct    c       = coproduct(a, b);
    PresMorphism lambda  = copair(c, identity_morphism(a), find_morphism(b, a));
    PresMorphism lambda2 = copair(c, find_morphism(a, b), identity_morphism(b));

    CategoryReport report;
    auto leg = [&](char const* name, PresMorphism const& iota, PresMorphism const& retract) {
      ZGMap  i  = induced_relmod_map(iota);
      ZGMap  r  = induced_relmod_map(retract);
      IntMat rl = r.matrix * i.matrix;
      bool   ok = rl == IntMat::identity(i.source.rank());
      report.checks.push_back({std::string(name) + " split by retraction", ok, {},
                               std::to_string(i.source.rank()) + " -> "
                                   + std::to_string(i.target.rank())});
      IntMat k = kernel_basis(i.matrix);
      report.checks.push_back({std::string(name) + " injective", k.cols() == 0, columns(k), ""});
    };
    leg("iota", c.first, lambda);
    leg("iota'", c.second, lambda2);
    return finish(std::move(report), "splitting_check");
  }

  CategoryReport coproduct_injectivity_check(PresentedGroup const& a,
                                             PresentedGroup const& b,
                                             std::size_t           n,
                                             ZGModule const&       m,
                                             std::size_t           budget) {
    if (n == 0) {
      throw Error("coproduct_injectivity_check: n must be at least 1");
    }
    Coproduct   c     = coproduct(a, b);
    std::size_t order = a.order();
    std::size_t da = a.num_generators(), db = b.num_generators(), dc = da + db;
    ZGModule    ra = relation_module(a.schreier), rb = relation_module(b.schreier);
    ZGModule    rc = relation_module(c.object.schreier);
    require_budget(capped_product(m.rank(), capped_product(capped_power(rc.rank(), n - 1), dc)),
                   budget, "coproduct_injectivity_check");
    require_budget(capped_power(order * dc, n), budget, "coproduct_injectivity_check");

    CategoryReport report;

    // (a) H_1(F, N) + H_1(F', N') -> H_1(F'', N'').
    {
      ZGModule na = with_power(m, ra, n - 1), nb = with_power(m, rb, n - 1);
      ZGModule nc = with_power(m, rc, n - 1);
      IntMat   ea = coefficient_power(m, induced_relmod_map(c.first).matrix, n - 1);
      IntMat   eb = coefficient_power(m, induced_relmod_map(c.second).matrix, n - 1);
      IntMat   legs = block_diagonal(kron(IntMat::identity(da), ea), kron(IntMat::identity(db), eb));
      IntMat   src  = block_diagonal(h1_free(a, na), h1_free(b, nb));
      IntMat   img  = legs * src;
      IntMat   kc   = h1_free(c.object, nc);
      std::vector<IntVec> outside;
      for (auto const& v : columns(img)) {
        if (!solve_in_lattice(kc, v)) {
          outside.push_back(v);
        }
      }
      report.checks.push_back({"H_1(F) legs land in H_1(F'')", outside.empty(), outside, ""});
      IntMat k = kernel_basis(img);
      report.checks.push_back({"H_1(F) legs injective", k.cols() == 0, columns(k),
                               "rank " + std::to_string(src.cols()) + " -> "
                                   + std::to_string(kc.cols())});
    }

    // (b) coinvariants of tensor powers of the free modules.
    {
      GroupPtr g  = a.group;
      ZGModule fa = tensor_power(regular_free_module(g, da), n);
      ZGModule fb = tensor_power(regular_free_module(g, db), n);
      ZGModule fc = tensor_power(regular_free_module(g, dc), n);
      IntMat   ja = kron_power(slot_inclusion(order, da, 0, dc), n);
      IntMat   jb = kron_power(slot_inclusion(order, db, da, dc), n);
      ZGModule sum = direct_sum(fa, fb);
      ZGMap    incl(sum, fc, hstack(ja, jb));
      ZGMap    retract(fc, sum, vstack(ja.transpose(), jb.transpose()));
      bool     split = retract.matrix * incl.matrix == IntMat::identity(sum.rank());
      report.checks.push_back({"free tensor powers split", split, {}, ""});
      InducedMap h0 = induced_coinvariant_map(incl);
      Subgroup   k  = kernel_of_induced(h0);
      report.checks.push_back({"H_0 of free tensor powers injective", k.invariants.is_zero(),
                               k.generators, k.invariants.to_string()});
      AbInvariants coker = cokernel_of_induced(h0);
      report.checks.push_back({"H_0 cokernel torsion-free", coker.torsion.empty(), {},
                               coker.to_string()});
    }
    return finish(std::move(report), "coproduct_injectivity_check");
  }

  bool EqualizerReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.pass; });
  }

  EqualizerReport equalizer_limit(PresentedGroup const& p,
                                  std::size_t           n,
                                  ZGModule const&       m,
                                  std::size_t           budget) {
    if (n == 0) {
      throw Error("equalizer_limit: n must be at least 1");
    }
    Coproduct c  = coproduct(p, p);
    ZGModule  rc = relation_module(c.object.schreier);
    require_budget(capped_product(m.rank(), capped_power(rc.rank(), n)), budget,
                   "equalizer_limit");
    ZGModule r  = relation_module(p.schreier);
    IntMat   i1 = coefficient_power(m, induced_relmod_map(c.first).matrix, n);
    IntMat   i2 = coefficient_power(m, induced_relmod_map(c.second).matrix, n);

    EqualizerReport out;
    out.n            = n;
    out.coinvariants = coinvariants(with_power(m, r, n));
    InducedMap diff(out.coinvariants, coinvariants(with_power(m, rc, n)), i1 - i2);
    out.equalizer = kernel_of_induced(diff);
    out.h_even    = h_even(p, n, m, budget);

    out.checks.push_back({"equalizer = h_even", out.equalizer.invariants == out.h_even.invariants,
                          {},
                          out.equalizer.invariants.to_string() + " vs "
                              + out.h_even.invariants.to_string()});
    bool same = same_subgroup(out.coinvariants, out.equalizer.generators, out.h_even.kernel_lifts);
    out.checks.push_back({"kernel lifts generate the equalizer", same, {}, ""});
    for (auto const& ch : out.checks) {
      if (!ch.pass) {
        throw InvariantViolation("equalizer_limit: " + ch.name + " fails (" + ch.detail + ")");
      }
    }
    return out;
  }

  EqualizerReport equalizer_limit(PresentedGroup const& p, std::size_t n, std::size_t budget) {
    return equalizer_limit(p, n, trivial_module(p.group, 1), budget);
  }

  bool GammaEqualizerReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.pass; });
  }

  GammaEqualizerReport gamma_equalizer(PresentedGroup const& p, std::size_t n, std::size_t budget) {
    if (n == 0) {
      throw Error("gamma_equalizer: n must be at least 1");
    }
    Coproduct        c   = coproduct(p, p);
    ZGModule         r   = relation_module(p.schreier);
    ZGModule         rc  = relation_module(c.object.schreier);
    FreeLieSubmodule lie = free_lie_submodule(r, n, budget);
    FreeLieSubmodule lc  = free_lie_submodule(rc, n, budget);
    ZGMap            i1  = induced_relmod_map(c.first);
    ZGMap            i2  = induced_relmod_map(c.second);
    IntMat           l1  = induced_lie_map(lie, lc, i1).matrix;
    IntMat           l2  = induced_lie_map(lie, lc, i2).matrix;

    PresentedAbGroup gamma = coinvariants(lie.module);
    InducedMap       diff(gamma, coinvariants(lc.module), l1 - l2);

    GammaEqualizerReport out;
    out.n         = n;
    out.equalizer = kernel_of_induced(diff);

    Int const order(static_cast<unsigned long>(n));
    Int const bound = n == 2 ? Int(4) : order;
    std::vector<IntVec> bad;
    for (auto const& x : out.equalizer.generators) {
      if (!is_n_torsion(gamma, bound, x)) {
        bad.push_back(x);
      }
    }
    out.checks.push_back({"equalizer has the exponent bound", bad.empty(), bad,
                          out.equalizer.invariants.to_string() + ", bound " + bound.get_str()});

    if (n >= 2) {
      // l_n of the equalizer lies in the equalizer for R_ab^n and in its
      // n-torsion.
      PresentedAbGroup target = coinvariants(tensor_power(r, n));
      InducedMap       tdiff(target, coinvariants(tensor_power(rc, n)),
                             kron_power(i1.matrix, n) - kron_power(i2.matrix, n));
      Subgroup         teq = kernel_of_induced(tdiff);
      std::vector<IntVec> outside, untorsion;
      for (auto const& x : out.equalizer.generators) {
        IntVec y = lie.inclusion.matrix.apply(x);
        if (!subgroup_contains(target, teq.generators, y)) {
          outside.push_back(x);
        }
        if (!is_n_torsion(target, order, y)) {
          untorsion.push_back(x);
        }
      }
      out.checks.push_back({"l_n lands in the equalizer of H_0(R_ab^n)", outside.empty(), outside,
                            teq.invariants.to_string()});
      out.checks.push_back({"l_n lands in the n-torsion", untorsion.empty(), untorsion, ""});
    }
    for (auto const& ch : out.checks) {
      if (!ch.pass) {
        throw InvariantViolation("gamma_equalizer: " + ch.name + " fails (" + ch.detail + ")");
      }
    }
    return out;
  }

  StageCheck h_even_naturality(PresMorphism const& phi,
                               std::size_t         n,
                               ZGModule const&     m,
                               std::size_t         budget) {
    HomologyResult src = h_even(phi.source, n, m, budget);
    HomologyResult tgt = h_even(phi.target, n, m, budget);
    IntMat         f   = coefficient_power(m, induced_relmod_map(phi).matrix, n);
    std::vector<IntVec> images;
    for (auto const& x : src.kernel_lifts) {
      images.push_back(f.apply(x));
    }
    bool ok = same_subgroup(tgt.coinvariants, images, tgt.kernel_lifts);
    return {"h_even natural in degree " + std::to_string(2 * n), ok, {},
            src.invariants.to_string() + " -> " + tgt.invariants.to_string()};
  }

  StageCheck l_n_naturality(PresMorphism const& phi, std::size_t n, std::size_t budget) {
    ZGModule         r   = relation_module(phi.source.schreier);
    ZGModule         rt  = relation_module(phi.target.schreier);
    FreeLieSubmodule ls  = free_lie_submodule(r, n, budget);
    FreeLieSubmodule lt  = free_lie_submodule(rt, n, budget);
    ZGMap            f   = induced_relmod_map(phi);
    IntMat           lf  = induced_lie_map(ls, lt, f).matrix;
    IntMat           a   = lt.inclusion.matrix * lf;
    IntMat           b   = kron_power(f.matrix, n) * ls.inclusion.matrix;
    PresentedAbGroup tgt = coinvariants(tensor_power(rt, n));
    std::vector<IntVec> bad;
    for (auto const& v : columns(a - b)) {
      if (!tgt.contains(v)) {
        bad.push_back(v);
      }
    }
    return {"l_n natural in degree " + std::to_string(n), bad.empty(), bad, ""};
  }

}  // namespace relhom
