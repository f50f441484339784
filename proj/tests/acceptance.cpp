// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. usage: acceptance CORPUS_DIR

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relhom/error.hpp"
#include "relhom/freelie.hpp"
#include "relhom/homology.hpp"
#include "relhom/prescat.hpp"

using namespace relhom;

namespace {

  std::filesystem::path corpus_dir;

  Presentation load(std::string const& name) {
    std::ifstream      in(corpus_dir / (name + ".pres"));
    std::ostringstream text;
    text << in.rdbuf();
    if (!in) {
      throw Error("cannot read corpus file " + name);
    }
    return parse_presentation(text.str());
  }

  std::vector<std::string> const corpus_names = {"trivial", "c2", "c3", "c4",
                                                 "v4", "v4_3gen", "s3", "s3_3gen"};

  std::map<std::string, PresentedGroup> realize_corpus() {
    std::map<std::string, PresentedGroup> out;
    for (auto const& name : corpus_names) {
      out.emplace(name, realize(load(name)));
    }
    return out;
  }

  AbInvariants tor(std::initializer_list<long> t) {
    IntVec v;
    for (long x : t) {
      v.push_back(x);
    }
    return canonical_invariants(v);
  }

  // Collects failures; a criterion passes when none were recorded.
  struct Tally {
    std::vector<std::string> failures;
    std::size_t              checks = 0;

    void expect(bool ok, std::string const& what) {
      ++checks;
      if (!ok) {
        failures.push_back(what);
      }
    }
  };

  bool run(int number, std::string const& title, double limit_seconds,
           std::function<void(Tally&)> const& body) {
    Tally t;
    auto  start = std::chrono::steady_clock::now();
    try {
      body(t);
    } catch (std::exception const& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit_seconds) {
      t.failures.push_back("took " + std::to_string(secs) + " s, limit "
                           + std::to_string(limit_seconds) + " s");
    }
    bool pass = t.failures.empty();
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " ("
              << t.checks << " checks, " << secs << " s)\n";
    for (auto const& f : t.failures) {
      std::cout << "    " << f << '\n';
    }
    return pass;
  }

  // Words for the extra generator of the three-generator corpus entries, so
  // that they present the same CayleyGroup as their two-generator versions.
  PresentedGroup attach_three(std::string const& name, PresentedGroup const& base) {
    Word x = Word::generator(0), y = Word::generator(1);
    Word z = name == "v4_3gen" ? x * y : x * y * x;
    return attach_by_words(load(name), base, {x, y, z});
  }

  std::vector<std::pair<std::string, std::pair<PresentedGroup, PresentedGroup>>>
  corpus_pairs(std::map<std::string, PresentedGroup> const& c) {
    std::vector<std::pair<std::string, std::pair<PresentedGroup, PresentedGroup>>> out;
    for (auto const& name : corpus_names) {
      out.push_back({name + " * " + name, {c.at(name), c.at(name)}});
    }
    out.push_back({"v4 * v4_3gen", {c.at("v4"), attach_three("v4_3gen", c.at("v4"))}});
    out.push_back({"s3 * s3_3gen", {c.at("s3"), attach_three("s3_3gen", c.at("s3"))}});
    return out;
  }

  bool lyndon_by_rotation(std::vector<int> const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::vector<int> rot(w.begin() + i, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + i);
      if (!(w < rot)) {
        return false;
      }
    }
    return true;
  }

  std::size_t brute_lyndon_count(std::size_t r, std::size_t n) {
    std::size_t      count = 0;
    std::vector<int> w(n, 0);
    while (true) {
      count += lyndon_by_rotation(w);
      std::size_t i = n;
      while (i > 0 && w[i - 1] == static_cast<int>(r) - 1) {
        w[--i] = 0;
      }
      if (i == 0) {
        return count;
      }
      ++w[i - 1];
    }
  }

  bool unimodular(IntMat const& u) {
    return u.rows() == u.cols() && cokernel_invariants(u).is_zero();
  }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance CORPUS_DIR\n";
    return 2;
  }
  corpus_dir = argv[1];
  auto corpus = realize_corpus();
  bool all    = true;

  all &= run(1, "h_even and h_odd agree with the bar complex", 600, [&](Tally& t) {
    for (auto name : {"c2", "c3", "c4", "v4", "s3"}) {
      auto const& pg = corpus.at(name);
      auto        z  = trivial_module(pg.group, 1);
      for (std::size_t n = 1; n <= 2; ++n) {
        auto a = h_even(pg, n).invariants;
        auto b = bar_homology(*pg.group, z, 2 * n, 100000);
        t.expect(a == b, std::string(name) + " H_" + std::to_string(2 * n) + ": " + a.to_string()
                             + " vs " + b.to_string());
      }
      auto a = h_odd(pg, 1);
      auto b = bar_homology(*pg.group, z, 3, 100000);
      t.expect(a == b, std::string(name) + " H_3: " + a.to_string() + " vs " + b.to_string());
    }
  });

  all &= run(2, "known homology values", 300, [&](Tally& t) {
    for (auto name : {"c2", "c3", "c4"}) {
      for (std::size_t n = 1; n <= 3; ++n) {
        auto h = h_even(corpus.at(name), n).invariants;
        t.expect(h.is_zero(), std::string(name) + " H_" + std::to_string(2 * n) + " = "
                                  + h.to_string());
      }
    }
    auto check = [&](char const* name, std::size_t deg, AbInvariants const& want) {
      auto const& pg  = corpus.at(name);
      auto        got = deg % 2 == 0 ? h_even(pg, deg / 2).invariants : h_odd(pg, deg / 2);
      t.expect(got == want, std::string(name) + " H_" + std::to_string(deg) + " = "
                                + got.to_string() + ", expected " + want.to_string());
    };
    check("v4", 2, tor({2}));
    check("v4", 4, tor({2, 2}));
    check("s3", 2, {});
    check("c2", 3, tor({2}));
    check("c3", 3, tor({3}));
  });

  all &= run(3, "relation sequence exactness", 60, [&](Tally& t) {
    for (auto const& name : corpus_names) {
      auto rep = verify_relation_sequence(corpus.at(name));
      t.expect(rep.stages.size() == 4, name + ": four stages");
      for (auto const& s : rep.stages) {
        t.expect(s.pass, name + ": " + s.name);
      }
    }
  });

  all &= run(4, "five-term exactness at every junction", 600, [&](Tally& t) {
    for (auto const& name : corpus_names) {
      auto const& pg = corpus.at(name);
      for (std::size_t n = 1; n <= 2; ++n) {
        auto rep = five_term(pg, trivial_module(pg.group, 1), n);
        for (auto const& c : rep.checks) {
          t.expect(c.pass, name + " n=" + std::to_string(n) + ": " + c.name);
        }
      }
    }
  });

  all &= run(5, "doubling equalizer equals h_even", 900, [&](Tally& t) {
    t.expect(coproduct(corpus.at("v4"), corpus.at("v4")).object.relation_rank() == 13,
             "V4 doubling has relation rank 13");
    for (auto const& name : corpus_names) {
      auto const& pg = corpus.at(name);
      for (std::size_t n = 1; n <= 2; ++n) {
        auto rep = equalizer_limit(pg, n);
        for (auto const& c : rep.checks) {
          t.expect(c.pass, name + " n=" + std::to_string(n) + ": " + c.name);
        }
        t.expect(rep.equalizer.invariants == rep.h_even.invariants,
                 name + " n=" + std::to_string(n) + ": invariants");
      }
    }
  });

  all &= run(6, "torsion of ker phi_n, J_n and the gamma equalizer", 900, [&](Tally& t) {
    std::pair<char const*, std::size_t> cases[] = {{"v4", 2}, {"c3", 2}, {"c3", 3}, {"s3", 2}};
    for (auto [name, n] : cases) {
      auto rep = torsion_report(corpus.at(name), n);
      t.expect(rep.checks.size() == 4, std::string(name) + ": four checks");
      for (auto const& c : rep.checks) {
        t.expect(c.pass, std::string(name) + " n=" + std::to_string(n) + ": " + c.name);
      }
    }
    auto g = gamma_equalizer(corpus.at("c3"), 2);
    t.expect(g.pass(), "gamma_equalizer(c3, 2) checks");
    t.expect(g.equalizer.invariants.is_zero(),
             "gamma_equalizer(c3, 2) = " + g.equalizer.invariants.to_string());
  });

  all &= run(7, "structural properties", 600, [&](Tally& t) {
    // Nielsen-Schreier on every enumeration, including the coproducts.
    auto pairs = corpus_pairs(corpus);
    auto ns    = [&](PresentedGroup const& pg, std::string const& what) {
      std::size_t m = pg.order(), d = pg.num_generators();
      t.expect(pg.relation_rank() == d * m - m + 1, what + ": Nielsen-Schreier rank");
    };
    for (auto const& name : corpus_names) {
      ns(corpus.at(name), name);
    }
    for (auto const& [label, p] : pairs) {
      ns(coproduct(p.first, p.second).object, label);
    }

    // Witt dimensions.
    for (std::size_t r = 1; r <= 4; ++r) {
      for (std::size_t n = 1; n <= 6; ++n) {
        std::size_t count = lyndon_words(r, n).size();
        t.expect(count == brute_lyndon_count(r, n)
                     && Int(static_cast<unsigned long>(count)) == witt_number(r, n),
                 "Witt r=" + std::to_string(r) + " n=" + std::to_string(n));
      }
    }

    // Smith normal form round trip.
    std::mt19937                        rng(7);
    std::uniform_int_distribution<int>  dim(1, 7);
    std::uniform_int_distribution<int>  entry(-9, 9);
    std::uniform_int_distribution<int>  sparsity(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t rows = dim(rng), cols = dim(rng);
      DenseMat    a(rows, IntVec(cols));
      for (auto& row : a) {
        for (auto& x : row) {
          x = sparsity(rng) == 0 ? 0 : entry(rng);
        }
      }
      IntMat    m  = IntMat::from_dense(rows, cols, a);
      SmithForm sf = smith(m);
      bool      ok = sf.U * m * sf.V == sf.D && unimodular(sf.U) && unimodular(sf.V);
      Int       prev(1);
      bool      zero_seen = false;
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          if (i != j && sgn(sf.D.at(i, j)) != 0) {
            ok = false;
          }
        }
        if (i < cols) {
          Int d = sf.D.at(i, i);
          if (sgn(d) < 0) {
            ok = false;
          }
          if (sgn(d) == 0) {
            zero_seen = true;
          } else if (zero_seen || d % prev != 0) {
            ok = false;
          } else {
            prev = d;
          }
        }
      }
      t.expect(ok, "SNF round trip, trial " + std::to_string(trial));
    }

    // Split identities.
    for (auto const& [label, p] : pairs) {
      auto rep = splitting_check(p.first, p.second);
      for (auto const& c : rep.checks) {
        t.expect(c.pass, label + ": " + c.name);
      }
    }

    // Presentation independence.
    for (auto [a, b] : {std::pair{"s3", "s3_3gen"}, std::pair{"v4", "v4_3gen"}}) {
      for (std::size_t n = 1; n <= 2; ++n) {
        auto ha = h_even(corpus.at(a), n).invariants;
        auto hb = h_even(corpus.at(b), n).invariants;
        t.expect(ha == hb, std::string(a) + " vs " + b + " H_" + std::to_string(2 * n) + ": "
                               + ha.to_string() + " vs " + hb.to_string());
      }
    }
  });

  std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << '\n';
  return all ? 0 : 1;
}
