#include <random>

#include "doctest.h"

#include "relhom/foxmagnus.hpp"

using namespace relhom;

namespace {

  PresentedGroup group_of(char const* text) {
    return realize(parse_presentation(text));
  }

  Word x(std::int64_t e = 1) { return Word::generator(0, e); }
  Word y(std::int64_t e = 1) { return Word::generator(1, e); }

  IntVec delta(std::size_t m, element_index g, long c = 1) {
    IntVec v(m);
    v[g] = c;
    return v;
  }

  // h * a in ZG.
  IntVec left_mul(CayleyGroup const& g, element_index h, IntVec const& a) {
    IntVec out(g.order());
    for (element_index k = 0; k < g.order(); ++k) {
      out[g.mul(h, k)] += a[k];
    }
    return out;
  }

  Word random_word(std::mt19937& rng, std::size_t d, std::size_t len) {
    std::uniform_int_distribution<std::uint32_t> gen(0, d - 1);
    std::uniform_int_distribution<int>           sign(0, 1);
    std::vector<Letter>                          raw;
    for (std::size_t i = 0; i < len; ++i) {
      raw.push_back({gen(rng), sign(rng) ? 1 : -1});
    }
    return reduce(raw);
  }

  Word random_element_of_R(std::mt19937& rng, PresentedGroup const& pg) {
    std::uniform_int_distribution<std::size_t> pick(0, pg.presentation.relators.size() - 1);
    std::uniform_int_distribution<int>         sign(0, 1);
    Word                                       out;
    while (out.length() == 0 || out.length() > 12) {
      out = Word{};
      for (int k = 0; k < 2; ++k) {
        Word c = random_word(rng, pg.num_generators(), 2);
        Word r = pg.presentation.relators[pick(rng)];
        out    = out * c * (sign(rng) ? r : r.inverse()) * c.inverse();
      }
    }
    return out;
  }

  char const* const corpus[] = {
      "gens: x\nrels: x",
      "gens: x\nrels: x^2",
      "gens: x\nrels: x^4",
      "gens: x,y\nrels: x^2, y^2, [x,y]",
      "gens: x,y\nrels: x^2, y^2, (x y)^3",
      "gens: x,y,z\nrels: x^2, y^2, z^2, x y z",
  };

}  // namespace

TEST_CASE("fox_derivative: documented examples") {
  auto c2 = group_of("gens: x\nrels: x^2");
  auto const& g = *c2.group;
  CHECK(fox_derivative(x(), 0, c2.map, g) == delta(2, 0));
  CHECK(fox_derivative(x(-1), 0, c2.map, g) == delta(2, g.inv(c2.map.images[0]), -1));
  CHECK(fox_derivative(x(2), 0, c2.map, g) == IntVec{1, 1});

  auto        s3 = group_of("gens: x,y\nrels: x^2, y^2, (x y)^3");
  auto const& h  = *s3.group;
  auto        ev = [&](Word const& w) { return evaluate(s3.map, h, w); };
  // Four-term expansion of x^-1 y^-1 x y: the x-term prefixes are x^-1 and
  // x^-1 y^-1, the y-terms x^-1 y^-1 and x^-1 y^-1 x.
  IntVec dx = vec::add(delta(6, ev(x(-1)), -1), delta(6, ev(x(-1) * y(-1))));
  IntVec dy = vec::add(delta(6, ev(x(-1) * y(-1)), -1), delta(6, ev(x(-1) * y(-1) * x())));
  CHECK(fox_derivative(commutator(x(), y()), 0, s3.map, h) == dx);
  CHECK(fox_derivative(commutator(x(), y()), 1, s3.map, h) == dy);
  CHECK(fox_derivative(y(), 0, s3.map, h) == IntVec(6));
}

TEST_CASE("fox_derivative satisfies the product rule") {
  auto         s3 = group_of("gens: x,y\nrels: x^2, y^2, (x y)^3");
  auto const&  g  = *s3.group;
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Word u = random_word(rng, 2, 8), v = random_word(rng, 2, 8);
    for (std::uint32_t s = 0; s < 2; ++s) {
      auto lhs = fox_derivative(u * v, s, s3.map, g);
      auto rhs = vec::add(fox_derivative(u, s, s3.map, g),
                          left_mul(g, evaluate(s3.map, g, u), fox_derivative(v, s, s3.map, g)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("relation_module: documented examples") {
  auto c2 = group_of("gens: x\nrels: x^2");
  auto r  = relation_module(c2.schreier);
  CHECK(r.rank() == 1);
  CHECK(r.action(0) == IntMat::identity(1));
  CHECK(r.action(1) == IntMat::identity(1));

  auto t = relation_module(group_of("gens: x\nrels: x").schreier);
  CHECK(t.rank() == 1);

  auto v4 = group_of("gens: x,y\nrels: x^2, y^2, [x,y]");
  auto rv = relation_module(v4.schreier);
  CHECK(rv.rank() == 5);
  for (element_index g = 0; g < 4; ++g) {
    CHECK(rv.action(g) * rv.action(v4.group->inv(g)) == IntMat::identity(5));
  }
}

TEST_CASE("magnus_map: documented examples") {
  auto c2 = group_of("gens: x\nrels: x^2");
  auto r  = relation_module(c2.schreier);
  auto mu = magnus_map(c2.schreier, r);
  DenseMat expected{{1}, {1}};
  CHECK(mu.matrix == IntMat::from_dense(2, 1, expected));

  auto t  = group_of("gens: x\nrels: x");
  auto mt = magnus_map(t.schreier, relation_module(t.schreier));
  CHECK(mt.matrix == IntMat::identity(1));

  auto v4 = group_of("gens: x,y\nrels: x^2, y^2, [x,y]");
  auto mv = magnus_map(v4.schreier, relation_module(v4.schreier));
  CHECK(kernel_basis(mv.matrix).cols() == 0);
}

TEST_CASE("verify_relation_sequence: documented examples") {
  auto c2 = verify_relation_sequence(group_of("gens: x\nrels: x^2"));
  CHECK(c2.pass());
  CHECK(c2.stages.size() == 4);

  auto s3 = group_of("gens: x,y\nrels: x^2, y^2, (x y)^3");
  CHECK(s3.relation_rank() == 7);
  CHECK(verify_relation_sequence(s3).pass());

  CHECK(verify_relation_sequence(group_of("gens: x\nrels: x")).pass());
}

TEST_CASE("verify_relation_sequence reports a broken sequence") {
  auto c2  = group_of("gens: x\nrels: x^2");
  auto seq = relation_sequence(c2);
  // Doubling mu keeps sigma mu = 0 but loses ker sigma = im mu.
  seq.mu.matrix = IntMat::identity(2) * seq.mu.matrix + IntMat::identity(2) * seq.mu.matrix;
  auto report   = verify_relation_sequence(seq);
  CHECK_FALSE(report.pass());
  CHECK_FALSE(report.stages[1].pass);
  CHECK_FALSE(report.stages[1].witnesses.empty());
  CHECK(report.stages[2].pass);
}

TEST_CASE("relation sequence is exact over the corpus") {
  for (auto text : corpus) {
    auto pg = group_of(text);
    INFO(text);
    CHECK(verify_relation_sequence(pg).pass());
  }
}

TEST_CASE("Magnus square commutes: mu(rewrite w) = Fox gradient of w") {
  std::mt19937 rng(21);
  for (auto text : corpus) {
    auto pg = group_of(text);
    auto r  = relation_module(pg.schreier);
    auto mu = magnus_map(pg.schreier, r);
    for (int trial = 0; trial < 40; ++trial) {
      Word w = random_element_of_R(rng, pg);
      CHECK(mu.matrix.apply(rewrite_in_R(pg.schreier, w))
            == fox_gradient(w, pg.map, *pg.group));
    }
  }
}

TEST_CASE("conjugation closure: rewrite(s w s^-1) = action(s) rewrite(w)") {
  std::mt19937 rng(4);
  for (auto text : corpus) {
    auto pg = group_of(text);
    auto r  = relation_module(pg.schreier);
    for (int trial = 0; trial < 30; ++trial) {
      Word w = random_element_of_R(rng, pg);
      for (std::uint32_t s = 0; s < pg.num_generators(); ++s) {
        Word g = Word::generator(s);
        CHECK(rewrite_in_R(pg.schreier, g * w * g.inverse())
              == r.action(pg.map.images[s]).apply(rewrite_in_R(pg.schreier, w)));
      }
    }
  }
}
