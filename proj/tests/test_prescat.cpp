#include "doctest.h"

#include "relhom/error.hpp"
#include "relhom/prescat.hpp"

using namespace relhom;

namespace {

  PresentedGroup group_of(char const* text) {
    return realize(parse_presentation(text));
  }

  Word gen(std::uint32_t s) { return Word::generator(s); }

  char const* const trivial_p = "gens: x\nrels: x";
  char const* const c2_p      = "gens: x\nrels: x^2";
  char const* const c3_p      = "gens: x\nrels: x^3";
  char const* const c4_p      = "gens: x\nrels: x^4";
  char const* const v4_p      = "gens: x,y\nrels: x^2, y^2, [x,y]";
  char const* const s3_p      = "gens: x,y\nrels: x^2, y^2, (x y)^3";

  // Second presentations of the same groups, attached to the first ones.
  PresentedGroup c2_alt(PresentedGroup const& c2) {
    return attach_by_words(parse_presentation("gens: a,b\nrels: a^2, b^2, a b^-1"), c2,
                           {gen(0), gen(0)});
  }
  PresentedGroup v4_3gen(PresentedGroup const& v4) {
    return attach_by_words(
        parse_presentation("gens: x,y,z\nrels: x^2, y^2, z^2, [x,y], z = x y"), v4,
        {gen(0), gen(1), gen(0) * gen(1)});
  }
  PresentedGroup s3_3gen(PresentedGroup const& s3) {
    return attach_by_words(
        parse_presentation("gens: x,y,z\nrels: x^2, y^2, z^2, (x y)^3, z = x y x"), s3,
        {gen(0), gen(1), gen(0) * gen(1) * gen(0)});
  }

  std::vector<std::pair<PresentedGroup, PresentedGroup>> corpus_pairs() {
    std::vector<std::pair<PresentedGroup, PresentedGroup>> out;
    for (auto text : {trivial_p, c2_p, c3_p, c4_p, v4_p, s3_p}) {
      auto p = group_of(text);
      out.emplace_back(p, p);
    }
    auto c2 = group_of(c2_p);
    out.emplace_back(c2, c2_alt(c2));
    auto v4 = group_of(v4_p);
    out.emplace_back(v4, v4_3gen(v4));
    auto s3 = group_of(s3_p);
    out.emplace_back(s3, s3_3gen(s3));
    return out;
  }

}  // namespace

TEST_CASE("find_morphism: documented examples") {
  auto c2 = group_of(c2_p);
  auto id = find_morphism(c2, c2);
  CHECK(id.images == std::vector<Word>{gen(0)});

  auto alt = c2_alt(c2);
  auto phi = find_morphism(c2, alt);
  CHECK(phi.images == std::vector<Word>{gen(0)});

  auto v4  = group_of(v4_p);
  auto v43 = v4_3gen(v4);
  CHECK(find_morphism(v4, v43).images == std::vector<Word>{gen(0), gen(1)});
}

TEST_CASE("find_morphism refuses presentations of different groups") {
  CHECK_THROWS_AS(find_morphism(group_of(c2_p), group_of(c3_p)), Error);
}

TEST_CASE("PresMorphism rejects images over the wrong element") {
  auto v4 = group_of(v4_p);
  CHECK_THROWS_AS(PresMorphism(v4, v4, {gen(1), gen(1)}), InvariantViolation);
}

TEST_CASE("coproduct: documented examples") {
  auto c2 = group_of(c2_p);
  auto cp = coproduct(c2, c2);
  CHECK(cp.object.num_generators() == 2);
  CHECK(cp.object.relation_rank() == 3);
  CHECK(cp.object.presentation.generator_names == std::vector<std::string>{"x", "x'"});

  auto v4 = group_of(v4_p);
  CHECK(coproduct(v4, v4).object.relation_rank() == 13);

  auto t  = group_of(trivial_p);
  auto tp = coproduct(t, t);
  CHECK(tp.object.relation_rank() == (1 + 1) * 1 - 1 + 1);
}

TEST_CASE("Nielsen-Schreier rank of coproducts") {
  for (auto const& [a, b] : corpus_pairs()) {
    auto        c = coproduct(a, b);
    std::size_t m = a.order(), d = a.num_generators() + b.num_generators();
    CHECK(c.object.relation_rank() == d * m - m + 1);
  }
}

TEST_CASE("copair restricts to its components") {
  auto v4  = group_of(v4_p);
  auto v43 = v4_3gen(v4);
  auto c   = coproduct(v4, v43);
  auto f   = identity_morphism(v4);
  auto g   = find_morphism(v43, v4);
  auto h   = copair(c, f, g);
  CHECK(compose(h, c.first).images == f.images);
  CHECK(compose(h, c.second).images == g.images);
}

TEST_CASE("induced_relmod_map: documented examples") {
  auto v4 = group_of(v4_p);
  CHECK(induced_relmod_map(identity_morphism(v4)).matrix == IntMat::identity(5));

  auto c2     = group_of(c2_p);
  auto c      = coproduct(c2, c2);
  auto iota   = induced_relmod_map(c.first);
  auto lambda = induced_relmod_map(copair(c, identity_morphism(c2), find_morphism(c2, c2)));
  CHECK(iota.matrix.rows() == 3);
  CHECK(iota.matrix.cols() == 1);
  CHECK(lambda.matrix * iota.matrix == IntMat::identity(1));
}

TEST_CASE("Magnus naturality on the C2 doubling") {
  auto c2 = group_of(c2_p);
  auto c  = coproduct(c2, c2);
  auto mu = relation_sequence(c2).mu.matrix;
  auto mc = relation_sequence(c.object).mu.matrix;
  for (auto const* iota : {&c.first, &c.second}) {
    std::size_t offset = iota == &c.first ? 0 : 1;
    // ZG^1 -> ZG^2, slot 0 -> slot offset.
    IntMat block(2 * 2, 2);
    block.set(offset * 2 + 0, 0, Int(1));
    block.set(offset * 2 + 1, 1, Int(1));
    CHECK(mc * induced_relmod_map(*iota).matrix == block * mu);
  }
}

TEST_CASE("splitting_check over all corpus pairs") {
  for (auto const& [a, b] : corpus_pairs()) {
    auto r = splitting_check(a, b);
    CHECK(r.pass());
    CHECK(r.checks.size() == 4);
  }
}

TEST_CASE("coproduct_injectivity_check: documented examples") {
  auto c2 = group_of(c2_p);
  CHECK(coproduct_injectivity_check(c2, c2, 1, trivial_module(c2.group, 1)).pass());
  auto v4 = group_of(v4_p);
  CHECK(coproduct_injectivity_check(v4, v4, 1, trivial_module(v4.group, 1)).pass());
  auto c3 = group_of(c3_p);
  CHECK(coproduct_injectivity_check(c3, c3, 2, trivial_module(c3.group, 1)).pass());
}

TEST_CASE("the H_1(F) error term vanishes in the doubling over the corpus") {
  for (auto text : {trivial_p, c2_p, c3_p, c4_p, v4_p, s3_p}) {
    auto p = group_of(text);
    INFO(text);
    for (std::size_t n = 1; n <= 2; ++n) {
      CHECK(coproduct_injectivity_check(p, p, n, trivial_module(p.group, 1)).pass());
    }
  }
}

TEST_CASE("equalizer_limit: documented examples") {
  CHECK(equalizer_limit(group_of(c2_p), 1).equalizer.invariants.is_zero());
  auto v4 = equalizer_limit(group_of(v4_p), 1);
  CHECK(v4.equalizer.invariants == AbInvariants{0, {2}});
  CHECK(v4.pass());
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(equalizer_limit(group_of(trivial_p), n).equalizer.invariants.is_zero());
  }
}

TEST_CASE("equalizer_limit matches h_even over the corpus") {
  std::vector<PresentedGroup> ps;
  for (auto text : {trivial_p, c2_p, c3_p, c4_p, v4_p, s3_p}) {
    ps.push_back(group_of(text));
  }
  ps.push_back(v4_3gen(ps[4]));
  for (auto const& p : ps) {
    INFO(p.presentation.to_string());
    for (std::size_t n = 1; n <= 2; ++n) {
      auto r = equalizer_limit(p, n);
      CHECK(r.pass());
      CHECK(r.equalizer.invariants == r.h_even.invariants);
    }
  }
}

TEST_CASE("equalizer_limit with the relation module as coefficients") {
  auto v4 = group_of(v4_p);
  CHECK(equalizer_limit(v4, 1, relation_module(v4.schreier)).pass());
}

TEST_CASE("gamma_equalizer: documented examples") {
  CHECK(gamma_equalizer(group_of(c2_p), 2).equalizer.invariants.is_zero());
  CHECK(gamma_equalizer(group_of(c3_p), 2).equalizer.invariants.is_zero());
  auto v4 = gamma_equalizer(group_of(v4_p), 2);
  CHECK(v4.pass());
  for (auto const& t : v4.equalizer.invariants.torsion) {
    CHECK(Int(4) % t == 0);
  }
  CHECK(v4.equalizer.invariants.free_rank == 0);
}

TEST_CASE("naturality of h_even and l_n under corpus morphisms") {
  for (auto const& [a, b] : corpus_pairs()) {
    INFO(a.presentation.to_string() << " -> " << b.presentation.to_string());
    auto phi = find_morphism(a, b);
    auto psi = find_morphism(b, a);
    for (std::size_t n = 1; n <= 2; ++n) {
      CHECK(h_even_naturality(phi, n, trivial_module(a.group, 1)).pass);
      CHECK(h_even_naturality(psi, n, trivial_module(a.group, 1)).pass);
      CHECK(l_n_naturality(phi, n).pass);
      CHECK(l_n_naturality(psi, n).pass);
    }
  }
}
