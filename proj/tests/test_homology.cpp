#include "doctest.h"

#include "relhom/error.hpp"
#include "relhom/homology.hpp"

using namespace relhom;

namespace {

  PresentedGroup group_of(char const* text) {
    return realize(parse_presentation(text));
  }

  AbInvariants Z(std::size_t k = 1) { return {k, {}}; }
  AbInvariants tor(std::initializer_list<long> t) {
    IntVec v;
    for (long x : t) {
      v.push_back(x);
    }
    return canonical_invariants(v);
  }
  AbInvariants const zero{};

  char const* const trivial_p = "gens: x\nrels: x";
  char const* const c2_p      = "gens: x\nrels: x^2";
  char const* const c3_p      = "gens: x\nrels: x^3";
  char const* const c4_p      = "gens: x\nrels: x^4";
  char const* const c6_p      = "gens: x\nrels: x^6";
  char const* const v4_p      = "gens: x,y\nrels: x^2, y^2, [x,y]";
  char const* const s3_p      = "gens: x,y\nrels: x^2, y^2, (x y)^3";
  char const* const s3_3gen_p = "gens: x,y,z\nrels: x^2, y^2, z^2, (x y)^3, z = x y x";

  // Small groups (m <= 6) with classical homology in degrees 1..4.
  struct Known {
    char const*  text;
    AbInvariants h[5];
  };

  Known const known[] = {
      {trivial_p, {Z(), zero, zero, zero, zero}},
      {c2_p, {Z(), tor({2}), zero, tor({2}), zero}},
      {c3_p, {Z(), tor({3}), zero, tor({3}), zero}},
      {c4_p, {Z(), tor({4}), zero, tor({4}), zero}},
      {c6_p, {Z(), tor({6}), zero, tor({6}), zero}},
      {v4_p, {Z(), tor({2, 2}), tor({2}), tor({2, 2, 2}), tor({2, 2})}},
      {s3_p, {Z(), tor({2}), zero, tor({6}), zero}},
  };

}  // namespace

TEST_CASE("h1_trivial: documented examples") {
  CHECK(h1_trivial(parse_presentation(c2_p)) == tor({2}));
  CHECK(h1_trivial(parse_presentation(v4_p)) == tor({2, 2}));
  CHECK(h1_trivial(parse_presentation(s3_p)) == tor({2}));
  CHECK(h1_trivial(parse_presentation("gens: x,y\nrels:")) == Z(2));
}

TEST_CASE("bar_homology: documented examples") {
  auto c2 = group_of(c2_p);
  auto z  = trivial_module(c2.group, 1);
  CHECK(bar_homology(*c2.group, z, 0) == Z());
  CHECK(bar_homology(*c2.group, z, 1) == tor({2}));
  CHECK(bar_homology(*c2.group, z, 2) == zero);
  auto v4 = group_of(v4_p);
  CHECK(bar_homology(*v4.group, trivial_module(v4.group, 1), 3) == tor({2, 2, 2}));
}

TEST_CASE("bar_homology reproduces classical values") {
  for (auto const& k : known) {
    auto pg = group_of(k.text);
    INFO(k.text);
    for (std::size_t deg = 0; deg <= 4; ++deg) {
      CHECK(bar_homology(*pg.group, trivial_module(pg.group, 1), deg) == k.h[deg]);
    }
  }
}

TEST_CASE("bar_homology refuses oversized complexes") {
  auto s3 = group_of(s3_p);
  CHECK_THROWS_AS(bar_homology(*s3.group, trivial_module(s3.group, 1), 4, 1000),
                  BudgetExceeded);
}

TEST_CASE("h_even: documented examples") {
  CHECK(h_even(group_of(c2_p), 1).invariants == zero);
  CHECK(h_even(group_of(c2_p), 2).invariants == zero);
  auto v4 = group_of(v4_p);
  CHECK(h_even(v4, 1).invariants == tor({2}));
  CHECK(h_even(v4, 2).invariants == tor({2, 2}));
}

TEST_CASE("h_even kernel lifts lie in the kernel and generate the right group") {
  auto v4 = group_of(v4_p);
  auto r  = h_even(v4, 2);
  REQUIRE(r.kernel_lifts.size() == 2);
  for (std::size_t i = 0; i < r.kernel_lifts.size(); ++i) {
    CHECK(vec::is_zero(r.magnus.apply(r.kernel_lifts[i])));
    CHECK_FALSE(r.coinvariants.contains(r.kernel_lifts[i]));
    CHECK(r.coinvariants.contains(vec::scale(r.moduli[i], r.kernel_lifts[i])));
  }
}

TEST_CASE("h_even refuses oversized lattices") {
  CHECK_THROWS_AS(h_even(group_of(s3_p), 3, 100), BudgetExceeded);
}

TEST_CASE("oracle agreement: h_even(n) = bar degree 2n") {
  for (auto const& k : known) {
    auto pg = group_of(k.text);
    INFO(k.text);
    CHECK(h_even(pg, 1).invariants == k.h[2]);
    CHECK(h_even(pg, 2).invariants == k.h[4]);
  }
}

TEST_CASE("hopf_h2: documented examples and oracle agreement") {
  CHECK(hopf_h2(group_of(c2_p)) == zero);
  CHECK(hopf_h2(group_of(v4_p)) == tor({2}));
  CHECK(hopf_h2(group_of(s3_p)) == zero);
  for (auto const& k : known) {
    auto pg = group_of(k.text);
    CHECK(hopf_h2(pg) == bar_homology(*pg.group, trivial_module(pg.group, 1), 2));
  }
}

TEST_CASE("h1_free: documented examples") {
  auto c2 = group_of(c2_p);
  CHECK(h1_free(c2, trivial_module(c2.group, 1)).cols() == 1);
  auto v4 = group_of(v4_p);
  CHECK(h1_free(v4, trivial_module(v4.group, 1)).cols() == 2);
  auto k = h1_free(c2, regular_free_module(c2.group, 1));
  REQUIRE(k.cols() == 1);
  CHECK(k.at(0, 0) == k.at(1, 0));
}

TEST_CASE("h_odd: documented examples and oracle agreement") {
  CHECK(h_odd(group_of(c2_p), 1) == tor({2}));
  CHECK(h_odd(group_of(c3_p), 1) == tor({3}));
  CHECK(h_odd(group_of(trivial_p), 1) == zero);
  CHECK(h_odd(group_of(trivial_p), 2) == zero);
  for (auto const& k : known) {
    auto pg = group_of(k.text);
    INFO(k.text);
    CHECK(h_odd(pg, 0) == k.h[1]);
    CHECK(h_odd(pg, 1) == k.h[3]);
  }
  CHECK(h_odd(group_of(c2_p), 2) == tor({2}));
  CHECK(h_odd(group_of(v4_p), 2)
        == bar_homology(*group_of(v4_p).group, trivial_module(group_of(v4_p).group, 1), 5,
                        100000));
}

TEST_CASE("five_term: documented examples") {
  auto c2  = group_of(c2_p);
  auto rep = five_term(c2, trivial_module(c2.group, 1), 1);
  CHECK(rep.pass());
  CHECK(rep.h2n.invariants == zero);
  CHECK(rep.h0 == Z());
  CHECK(rep.h1_free == Z());
  CHECK(rep.h1_group == tor({2}));

  auto v4 = group_of(v4_p);
  auto rv = five_term(v4, trivial_module(v4.group, 1), 1);
  CHECK(rv.pass());
  CHECK(rv.h0 == AbInvariants{2, {2}});
  CHECK(rv.h1_group == tor({2, 2}));

  // Only the homology groups vanish for the trivial group; H_0(G, R_ab) and
  // H_1(F) are both Z and the middle map is an isomorphism.
  auto t = group_of(trivial_p);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rt = five_term(t, trivial_module(t.group, 1), n);
    CHECK(rt.pass());
    CHECK(rt.h2n.invariants == zero);
    CHECK(rt.h1_group == zero);
    CHECK(rt.h0 == rt.h1_free);
  }
}

TEST_CASE("five_term passes every junction over the corpus") {
  for (auto const& k : known) {
    auto pg = group_of(k.text);
    INFO(k.text);
    for (std::size_t n = 1; n <= 2; ++n) {
      auto rep = five_term(pg, trivial_module(pg.group, 1), n);
      CHECK(rep.pass());
      CHECK(rep.checks.size() == 4);
      CHECK(rep.h2n.invariants == k.h[2 * n]);
    }
  }
}

TEST_CASE("presentation independence: S3 on two and three generators") {
  auto a = group_of(s3_p);
  auto b = group_of(s3_3gen_p);
  REQUIRE(b.order() == 6);
  for (std::size_t n = 1; n <= 2; ++n) {
    CHECK(h_even(a, n).invariants == h_even(b, n).invariants);
  }
  CHECK(h_odd(a, 1) == h_odd(b, 1));
}

TEST_CASE("dimension shift: H_4(G, Z) = H_2(G, R_ab)") {
  for (auto const& k : known) {
    auto pg     = group_of(k.text);
    auto relmod = relation_module(pg.schreier);
    CHECK(h_even(pg, 2).invariants == h_even(pg, 1, relmod).invariants);
  }
}

TEST_CASE("induced modules have no higher homology") {
  for (auto const& k : known) {
    auto pg     = group_of(k.text);
    auto relmod = relation_module(pg.schreier);
    for (auto const& m : {trivial_module(pg.group, 1), relmod}) {
      auto induced = tensor(m, regular_free_module(pg.group, 1));
      CHECK(bar_homology(*pg.group, induced, 1) == zero);
      CHECK(bar_homology(*pg.group, induced, 2) == zero);
    }
  }
}

TEST_CASE("h_even with non-trivial coefficients agrees with the bar complex") {
  auto s3     = group_of(s3_p);
  auto relmod = relation_module(s3.schreier);
  auto zg     = regular_free_module(s3.group, 1);
  CHECK(h_even(s3, 1, zg).invariants == zero);
  CHECK(h_even(s3, 1, relmod).invariants == bar_homology(*s3.group, relmod, 2));
  auto v4 = group_of(v4_p);
  auto rv = relation_module(v4.schreier);
  CHECK(h_even(v4, 1, rv).invariants == bar_homology(*v4.group, rv, 2));
}
