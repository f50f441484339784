#include "relhom/freelie.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

#include "relhom/error.hpp"

namespace relhom {

  namespace {
    int moebius(std::size_t n) {
      int sign = 1;
      for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
          n /= p;
          if (n % p == 0) {
            return 0;
          }
          sign = -sign;
        }
      }
      return n > 1 ? -sign : sign;
    }

    std::size_t checked_power(std::size_t r, std::size_t n, std::size_t budget, char const* what) {
      std::size_t out = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (r != 0 && out > budget / r) {
          throw BudgetExceeded(std::string(what) + ": " + std::to_string(r) + "^"
                               + std::to_string(n) + " columns exceed the budget of "
                               + std::to_string(budget));
        }
        out *= r;
      }
      return out;
    }

    // Shuffle the factors of x (x) y - y (x) x, where x has degree p and y
    // degree q: the index of a (x) b is a * r^q + b.
    SparseVec bracket(SparseVec const& x, std::size_t p, SparseVec const& y, std::size_t q,
                      std::size_t r) {
      std::size_t            rq = 1, rp = 1;
      for (std::size_t i = 0; i < q; ++i) {
        rq *= r;
      }
      for (std::size_t i = 0; i < p; ++i) {
        rp *= r;
      }
      std::map<std::size_t, Int> acc;
      for (auto const& [a, u] : x) {
        for (auto const& [b, v] : y) {
          acc[a * rq + b] += u * v;
          acc[b * rp + a] -= u * v;
        }
      }
      SparseVec out;
      for (auto& [i, c] : acc) {
        if (sgn(c) != 0) {
          out.emplace_back(i, std::move(c));
        }
      }
      return out;
    }
  }  // namespace

  Int witt_number(std::size_t r, std::size_t n) {
    if (n == 0) {
      throw Error("witt_number: degree must be positive");
    }
    Int sum = 0;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d == 0) {
        int mu = moebius(d);
        if (mu != 0) {
          Int power;
          mpz_ui_pow_ui(power.get_mpz_t(), r, n / d);
          sum += mu * power;
        }
      }
    }
    return sum / Int(n);
  }

  bool is_lyndon(LyndonWord const& w) {
    if (w.empty()) {
      return false;
    }
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) {
        return false;
      }
    }
    return true;
  }

  std::vector<LyndonWord> lyndon_words(std::size_t r, std::size_t n) {
    std::vector<LyndonWord> out;
    if (r == 0 || n == 0) {
      return out;
    }
    // Duval: visits every Lyndon word of length <= n in lexicographic order.
    LyndonWord w{0};
    while (!w.empty()) {
      if (w.size() == n) {
        out.push_back(w);
      }
      std::size_t k = w.size();
      while (w.size() < n) {
        w.push_back(w[w.size() - k]);
      }
      while (!w.empty() && w.back() == r - 1) {
        w.pop_back();
      }
      if (!w.empty()) {
        ++w.back();
      }
    }
    return out;
  }

  std::pair<LyndonWord, LyndonWord> standard_factorization(LyndonWord const& w) {
    if (w.size() < 2) {
      throw Error("standard_factorization: word has length below 2");
    }
    for (std::size_t i = 1; i < w.size(); ++i) {
      LyndonWord v(w.begin() + i, w.end());
      if (is_lyndon(v)) {
        return {LyndonWord(w.begin(), w.begin() + i), v};
      }
    }
    throw Error("standard_factorization: no Lyndon suffix");  // unreachable
  }

  std::size_t tensor_index(LyndonWord const& w, std::size_t r) {
    std::size_t out = 0;
    for (auto a : w) {
      out = out * r + a;
    }
    return out;
  }

  SparseVec bracket_expansion(LyndonWord const& w, std::size_t r) {
    if (w.size() == 1) {
      return {{w[0], Int(1)}};
    }
    auto [u, v] = standard_factorization(w);
    return bracket(bracket_expansion(u, r), u.size(), bracket_expansion(v, r), v.size(), r);
  }

  LieBasis lie_basis(std::size_t r, std::size_t n, std::size_t budget) {
    std::size_t rows = checked_power(r, n, budget, "lie_basis");
    LieBasis    out;
    out.degree   = n;
    out.alphabet = r;
    out.words    = lyndon_words(r, n);
    std::vector<SparseVec> cols;
    for (auto const& w : out.words) {
      SparseVec e = bracket_expansion(w, r);
      if (e.empty() || e.front().first != tensor_index(w, r) || e.front().second != 1) {
        throw InvariantViolation("lie_basis: expansion does not lead with its word");
      }
      cols.push_back(std::move(e));
    }
    out.expansions = IntMat::from_columns(rows, std::move(cols));
    return out;
  }

  std::optional<IntVec> lie_coordinates(LieBasis const& basis, SparseVec const& v) {
    std::unordered_map<std::size_t, std::size_t> column_of;
    for (std::size_t j = 0; j < basis.words.size(); ++j) {
      column_of[tensor_index(basis.words[j], basis.alphabet)] = j;
    }
    std::map<std::size_t, Int> residual;
    for (auto const& [i, c] : v) {
      residual[i] += c;
    }
    IntVec out(basis.words.size());
    while (true) {
      while (!residual.empty() && sgn(residual.begin()->second) == 0) {
        residual.erase(residual.begin());
      }
      if (residual.empty()) {
        return out;
      }
      auto [lead, c] = *residual.begin();
      auto it        = column_of.find(lead);
      if (it == column_of.end()) {
        return std::nullopt;
      }
      out[it->second] += c;
      for (auto const& [i, e] : basis.expansions.column(it->second)) {
        residual[i] -= c * e;
      }
    }
  }

  FreeLieSubmodule free_lie_submodule(ZGModule const& m, std::size_t n, std::size_t budget) {
    if (n == 0) {
      throw Error("free_lie_submodule: degree must be positive");
    }
    FreeLieSubmodule out;
    out.basis             = lie_basis(m.rank(), n, budget);
    ZGModule    power     = tensor_power(m, n);
    std::size_t w         = out.basis.words.size();
    IntMat const& incl    = out.basis.expansions;
    std::size_t order     = m.group()->order();
    std::vector<IntMat> action;
    action.reserve(order);
    for (element_index g = 0; g < order; ++g) {
      IntMat                 moved = power.action(g) * incl;
      std::vector<SparseVec> cols;
      for (std::size_t j = 0; j < w; ++j) {
        auto c = lie_coordinates(out.basis, moved.column(j));
        if (!c) {
          throw InvariantViolation("free_lie_submodule: the action leaves the bracket span");
        }
        cols.push_back(sparse::from_dense(*c));
      }
      action.push_back(IntMat::from_columns(w, std::move(cols)));
    }
    out.module    = ZGModule(m.group(), w, std::move(action));
    out.inclusion = ZGMap(out.module, power, incl);
    return out;
  }

  ZGMap induced_lie_map(FreeLieSubmodule const& source,
                        FreeLieSubmodule const& target,
                        ZGMap const&            f) {
    std::size_t n = source.basis.degree;
    if (target.basis.degree != n || f.matrix.cols() != source.basis.alphabet
        || f.matrix.rows() != target.basis.alphabet) {
      throw Error("induced_lie_map: degrees or ranks do not match");
    }
    IntMat power = f.matrix;
    for (std::size_t i = 1; i < n; ++i) {
      power = kron(power, f.matrix);
    }
    IntMat                 moved = power * source.inclusion.matrix;
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < moved.cols(); ++j) {
      auto c = lie_coordinates(target.basis, moved.column(j));
      if (!c) {
        throw InvariantViolation("induced_lie_map: image leaves the bracket span");
      }
      cols.push_back(sparse::from_dense(*c));
    }
    return ZGMap(source.module, target.module,
                 IntMat::from_columns(target.module.rank(), std::move(cols)));
  }

  namespace {
    FreeLieSubmodule lie_of_relations(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
      return free_lie_submodule(relation_module(pg.schreier), n, budget);
    }
  }  // namespace

  PresentedAbGroup gamma_quotient(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    return coinvariants(lie_of_relations(pg, n, budget).module);
  }

  InducedMap l_n_map(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    return induced_coinvariant_map(lie_of_relations(pg, n, budget).inclusion);
  }

  InducedMap phi_n_map(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    FreeLieSubmodule lie    = lie_of_relations(pg, n, budget);
    IntMat           magnus = untwisted_magnus_power(pg, trivial_module(pg.group, 1), n, budget);
    IntMat           matrix = magnus * lie.inclusion.matrix;
    return InducedMap(coinvariants(lie.module), PresentedAbGroup(matrix.rows(), IntMat(0, matrix.rows())),
                      matrix);
  }

  Subgroup j_n(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    return kernel_of_induced(l_n_map(pg, n, budget));
  }

  bool TorsionReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.pass; });
  }

  TorsionReport torsion_report(PresentedGroup const& pg, std::size_t n, std::size_t budget) {
    if (n < 2) {
      throw Error("torsion_report: degree must be at least 2");
    }
    FreeLieSubmodule lie    = lie_of_relations(pg, n, budget);
    IntMat           magnus = untwisted_magnus_power(pg, trivial_module(pg.group, 1), n, budget);
    InducedMap       l      = induced_coinvariant_map(lie.inclusion);
    IntMat           phi_m  = magnus * lie.inclusion.matrix;
    InducedMap phi(l.source, PresentedAbGroup(phi_m.rows(), IntMat(0, phi_m.rows())), phi_m);

    PresentedAbGroup const& gamma = l.source;
    Subgroup                jn    = kernel_of_induced(l);
    Subgroup                kphi  = kernel_of_induced(phi);
    Subgroup                tors  = torsion_subgroup(gamma);
    Int const               order(static_cast<unsigned long>(n));
    Int const               bound = n == 2 ? Int(4) : order;

    TorsionReport out;
    out.n       = n;
    out.gamma   = gamma.invariants();
    out.j_n     = jn.invariants;
    out.ker_phi = kphi.invariants;

    auto failures = [](std::vector<IntVec> const& gens, auto const& ok) {
      std::vector<IntVec> bad;
      for (auto const& x : gens) {
        if (!ok(x)) {
          bad.push_back(x);
        }
      }
      return bad;
    };
    auto add = [&](char const* name, std::vector<IntVec> bad, std::string detail) {
      bool pass = bad.empty();
      out.checks.push_back({name, pass, std::move(bad), std::move(detail)});
    };

    add("J_n is n-torsion",
        failures(jn.generators, [&](IntVec const& x) { return is_n_torsion(gamma, order, x); }),
        "J_n = " + jn.invariants.to_string());
    add("l_n(ker phi_n) is n-torsion", failures(kphi.generators, [&](IntVec const& x) {
          return is_n_torsion(l.target, order, l.matrix.apply(x));
        }),
        "ker phi_n = " + kphi.invariants.to_string());
    {
      std::vector<IntVec> bad;
      if (kphi.invariants.free_rank != 0) {
        bad = kphi.generators;
      } else {
        bad = failures(tors.generators,
                       [&](IntVec const& x) { return subgroup_contains(gamma, kphi.generators, x); });
        auto more = failures(kphi.generators, [&](IntVec const& x) {
          return subgroup_contains(gamma, tors.generators, x);
        });
        bad.insert(bad.end(), more.begin(), more.end());
      }
      add("ker phi_n is the torsion subgroup", std::move(bad),
          "torsion = " + tors.invariants.to_string());
    }
    add("ker phi_n has the exponent bound",
        failures(kphi.generators, [&](IntVec const& x) { return is_n_torsion(gamma, bound, x); }),
        "bound " + bound.get_str());

    for (auto const& c : out.checks) {
      if (!c.pass) {
        std::string msg = "torsion_report(n = " + std::to_string(n) + "): " + c.name + " fails";
        if (!c.witnesses.empty()) {
          msg += " at a generator with " + std::to_string(c.witnesses.size()) + " witnesses";
        }
        throw InvariantViolation(msg + " (" + c.detail + ")");
      }
    }
    return out;
  }

}  // namespace relhom
