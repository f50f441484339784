// relhom: integral homology and lower-central quotients of finite groups from
// finite presentations.
//
//   relhom hom|lie|verify|limit -p FILE [-n N] [--max-n N] [--coeff FILE|trivial]
//          [--json] [--cache DIR] [--budget COLS] [--timings]
//
// Exit status: 0 success, 1 error or failed check, 2 budget refusal.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "relhom/error.hpp"
#include "relhom/freelie.hpp"
#include "relhom/homology.hpp"
#include "relhom/prescat.hpp"

using json = nlohmann::json;
using namespace relhom;

namespace {

  constexpr int cache_version = 1;

  struct JobConfig {
    std::string command;
    std::string presentation_path;
    std::size_t n     = 0;
    std::size_t max_n = 0;
    std::string coeff = "trivial";
    bool        as_json = false;
    std::string cache_dir;
    std::size_t budget  = default_column_budget;
    bool        timings = false;
    std::string suite   = "all";
    bool        gamma   = false;
  };

  struct Check {
    std::string name;
    bool        pass = false;
    std::string detail;
  };

  // One line of output.
  struct Record {
    std::string                 quantity;
    std::size_t                 degree = 0;
    std::optional<AbInvariants> result;
    std::vector<Check>          checks;
  };

  std::uint64_t fnv1a(std::string const& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string hex(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << v;
    return out.str();
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot read " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }

  class Timer {
   public:
    explicit Timer(bool enabled) : _enabled(enabled) {}

    template <typename F>
    auto operator()(std::string const& stage, F&& f) {
      auto start = std::chrono::steady_clock::now();
      auto stop  = [&] {
        if (_enabled) {
          auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now()
                                                              - start)
                        .count();
          std::cerr << "timing " << stage << ": " << ms << " ms\n";
        }
      };
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        stop();
      } else {
        auto out = f();
        stop();
        return out;
      }
    }

   private:
    bool _enabled;
  };

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  json int_json(Int const& v) {
    if (v.fits_slong_p()) {
      return v.get_si();
    }
    return v.get_str();
  }

  Int int_from_json(json const& j) {
    if (j.is_string()) {
      return Int(j.get<std::string>());
    }
    return Int(j.get<long>());
  }

  json invariants_json(AbInvariants const& a) {
    json t = json::array();
    for (auto const& x : a.torsion) {
      t.push_back(int_json(x));
    }
    return {{"free_rank", a.free_rank}, {"torsion", t}};
  }

  AbInvariants invariants_from_json(json const& j) {
    AbInvariants a;
    a.free_rank = j.at("free_rank").get<std::size_t>();
    for (auto const& x : j.at("torsion")) {
      a.torsion.push_back(int_from_json(x));
    }
    return a;
  }

  json record_json(Record const& r) {
    json checks = json::array();
    for (auto const& c : r.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return {{"quantity", r.quantity},
            {"degree", r.degree},
            {"result", r.result ? invariants_json(*r.result) : json(nullptr)},
            {"checks", checks}};
  }

  Record record_from_json(json const& j) {
    Record r;
    r.quantity = j.at("quantity").get<std::string>();
    r.degree   = j.at("degree").get<std::size_t>();
    if (!j.at("result").is_null()) {
      r.result = invariants_from_json(j.at("result"));
    }
    for (auto const& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                          c.at("detail").get<std::string>()});
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cache: one versioned JSON file per job, written by atomic rename.
  ////////////////////////////////////////////////////////////////////////

  std::string job_key(JobConfig const& cfg, std::string const& pres, std::string const& coeff) {
    std::ostringstream k;
    k << "relhom-cache-v" << cache_version << '\n'
      << cfg.command << '\n'
      << cfg.suite << '\n'
      << cfg.gamma << '\n'
      << cfg.n << ' ' << cfg.max_n << '\n'
      << cfg.budget << '\n'
      << pres.size() << '\n'
      << pres << '\n'
      << coeff;
    return hex(fnv1a(k.str()));
  }

  std::optional<std::vector<Record>> cache_load(std::filesystem::path const& file) {
    std::ifstream in(file);
    if (!in) {
      return std::nullopt;
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("version", 0) != cache_version) {
      return std::nullopt;
    }
    std::vector<Record> out;
    for (auto const& r : j.at("records")) {
      out.push_back(record_from_json(r));
    }
    return out;
  }

  void cache_store(std::filesystem::path const& file, std::vector<Record> const& records) {
    json rs = json::array();
    for (auto const& r : records) {
      rs.push_back(record_json(r));
    }
    json doc = {{"version", cache_version}, {"records", rs}};
    std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << doc.dump() << '\n';
      if (!out) {
        throw Error("cannot write cache file " + tmp.string());
      }
    }
    std::filesystem::rename(tmp, file);
  }

  ////////////////////////////////////////////////////////////////////////
  // Coefficients
  ////////////////////////////////////////////////////////////////////////

  // {"rank": r, "actions": [A_0, A_1, ...]}, one row-major r x r matrix per
  // generator of the presentation.
  ZGModule load_coefficients(std::string const& text, PresentedGroup const& pg) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error("coefficient file is not a JSON object");
    }
    std::size_t rank    = j.at("rank").get<std::size_t>();
    auto const& actions = j.at("actions");
    if (actions.size() != pg.num_generators()) {
      throw Error("coefficient file: need one action matrix per generator");
    }
    std::vector<IntMat> mats;
    for (auto const& a : actions) {
      if (a.size() != rank) {
        throw Error("coefficient file: action matrix has the wrong number of rows");
      }
      DenseMat rows;
      for (auto const& row : a) {
        if (row.size() != rank) {
          throw Error("coefficient file: action matrix has the wrong number of columns");
        }
        IntVec r;
        for (auto const& x : row) {
          r.push_back(int_from_json(x));
        }
        rows.push_back(std::move(r));
      }
      mats.push_back(IntMat::from_dense(rank, rank, rows));
    }
    return module_from_generators(pg.group, pg.map.images, mats);
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::size_t> degrees(JobConfig const& cfg) {
    std::vector<std::size_t> out;
    if (cfg.max_n > 0) {
      for (std::size_t n = 1; n <= cfg.max_n; ++n) {
        out.push_back(n);
      }
    } else {
      out.push_back(cfg.n == 0 ? 1 : cfg.n);
    }
    return out;
  }

  struct Context {
    JobConfig const& cfg;
    PresentedGroup   pg;
    ZGModule         m;
    bool             trivial_coeff = true;
    Timer&           timer;
  };

  Check from_stage(StageCheck const& s) { return {s.name, s.pass, s.detail}; }

  // Runs f, turning an InvariantViolation into a failed check.
  void guarded(std::vector<Check>& out, std::string const& name, std::function<void()> f) {
    try {
      f();
    } catch (InvariantViolation const& e) {
      out.push_back({name, false, e.what()});
    }
  }

  std::vector<Record> cmd_hom(Context& ctx) {
    std::vector<Record> out;
    auto                odd = [&](std::size_t n) {
      ZGModule coeff = ctx.m;
      if (n > 0) {
        coeff = tensor(ctx.m, tensor_power(relation_module(ctx.pg.schreier), n));
      }
      auto r = ctx.timer("H_" + std::to_string(2 * n + 1),
                                        [&] { return h1_group(ctx.pg, coeff, ctx.cfg.budget); });
      out.push_back({"H", 2 * n + 1, r, {}});
    };
    auto even = [&](std::size_t n) {
      auto r = ctx.timer("H_" + std::to_string(2 * n),
                         [&] { return h_even(ctx.pg, n, ctx.m, ctx.cfg.budget); });
      out.push_back({"H", 2 * n, r.invariants, {}});
    };
    if (ctx.cfg.max_n > 0) {
      odd(0);
      for (auto n : degrees(ctx.cfg)) {
        even(n);
        odd(n);
      }
    } else {
      even(degrees(ctx.cfg).front());
    }
    return out;
  }

  std::vector<Record> cmd_lie(Context& ctx) {
    std::vector<Record> out;
    for (auto n : degrees(ctx.cfg)) {
      auto gamma = ctx.timer("gamma_" + std::to_string(n),
                             [&] { return gamma_quotient(ctx.pg, n, ctx.cfg.budget); });
      out.push_back({"gamma", n, gamma.invariants(), {}});
      out.push_back({"J", n, j_n(ctx.pg, n, ctx.cfg.budget).invariants, {}});
      out.push_back(
          {"ker_phi", n, kernel_of_induced(phi_n_map(ctx.pg, n, ctx.cfg.budget)).invariants, {}});
      if (n >= 2) {
        Record r{"torsion_report", n, std::nullopt, {}};
        guarded(r.checks, "torsion_report", [&] {
          for (auto const& c : torsion_report(ctx.pg, n, ctx.cfg.budget).checks) {
            r.checks.push_back(from_stage(c));
          }
        });
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  std::vector<Record> cmd_verify(Context& ctx) {
    std::vector<Record> out;
    auto const&         suite = ctx.cfg.suite;
    auto                want  = [&](char const* s) { return suite == "all" || suite == s; };
    static char const* const known[] = {"all", "sequence", "five", "lie", "split", "oracle", "limit"};
    if (std::find(std::begin(known), std::end(known), suite) == std::end(known)) {
      throw Error("unknown suite '" + suite + "'");
    }
    auto ns = degrees(ctx.cfg);

    if (want("sequence")) {
      Record r{"sequence", 0, std::nullopt, {}};
      auto   rep = ctx.timer("sequence", [&] { return verify_relation_sequence(ctx.pg); });
      for (auto const& s : rep.stages) {
        r.checks.push_back(from_stage(s));
      }
      out.push_back(std::move(r));
    }
    if (want("five")) {
      for (auto n : ns) {
        Record r{"five_term", n, std::nullopt, {}};
        guarded(r.checks, "five_term", [&] {
          auto rep = ctx.timer("five_term", [&] { return five_term(ctx.pg, ctx.m, n, ctx.cfg.budget); });
          r.result = rep.h2n.invariants;
          for (auto const& c : rep.checks) {
            r.checks.push_back(from_stage(c));
          }
        });
        out.push_back(std::move(r));
      }
    }
    if (want("lie")) {
      std::vector<std::size_t> lie_ns;
      for (auto n : ns) {
        if (n >= 2) {
          lie_ns.push_back(n);
        }
      }
      if (lie_ns.empty()) {
        lie_ns.push_back(2);
      }
      for (auto n : lie_ns) {
        Record r{"torsion_report", n, std::nullopt, {}};
        guarded(r.checks, "torsion_report", [&] {
          auto rep = ctx.timer("torsion_report", [&] { return torsion_report(ctx.pg, n, ctx.cfg.budget); });
          r.result = rep.ker_phi;
          for (auto const& c : rep.checks) {
            r.checks.push_back(from_stage(c));
          }
        });
        out.push_back(std::move(r));
      }
    }
    if (want("split")) {
      Record r{"split", 0, std::nullopt, {}};
      guarded(r.checks, "splitting_check", [&] {
        for (auto const& c : splitting_check(ctx.pg, ctx.pg).checks) {
          r.checks.push_back(from_stage(c));
        }
      });
      for (auto n : ns) {
        guarded(r.checks, "coproduct_injectivity_check", [&] {
          for (auto const& c :
               coproduct_injectivity_check(ctx.pg, ctx.pg, n, ctx.m, ctx.cfg.budget).checks) {
            r.checks.push_back(from_stage(c));
          }
        });
      }
      out.push_back(std::move(r));
    }
    if (want("oracle")) {
      for (auto n : ns) {
        Record r{"oracle", n, std::nullopt, {}};
        auto   h = h_even(ctx.pg, n, ctx.m, ctx.cfg.budget);
        r.result = h.invariants;
        try {
          auto bar = bar_homology(*ctx.pg.group, ctx.m, 2 * n, ctx.cfg.budget);
          r.checks.push_back({"h_even = bar degree " + std::to_string(2 * n), bar == h.invariants,
                              h.invariants.to_string() + " vs " + bar.to_string()});
        } catch (BudgetExceeded const&) {
          r.checks.push_back({"bar degree " + std::to_string(2 * n) + " skipped (budget)", true, ""});
        }
        {
          ZGModule coeff = tensor(ctx.m, tensor_power(relation_module(ctx.pg.schreier), n));
          auto     odd   = h1_group(ctx.pg, coeff, ctx.cfg.budget);
          try {
            auto bar = bar_homology(*ctx.pg.group, ctx.m, 2 * n + 1, ctx.cfg.budget);
            r.checks.push_back({"h_odd = bar degree " + std::to_string(2 * n + 1), bar == odd,
                                odd.to_string() + " vs " + bar.to_string()});
          } catch (BudgetExceeded const&) {
            r.checks.push_back(
                {"bar degree " + std::to_string(2 * n + 1) + " skipped (budget)", true, ""});
          }
          if (n == 1 && ctx.trivial_coeff) {
            auto hopf = hopf_h2(ctx.pg);
            r.checks.push_back({"hopf = h_even degree 2", hopf == h.invariants,
                                hopf.to_string() + " vs " + h.invariants.to_string()});
          }
        }
        out.push_back(std::move(r));
      }
    }
    if (want("limit")) {
      for (auto n : ns) {
        Record r{"equalizer", n, std::nullopt, {}};
        guarded(r.checks, "equalizer_limit", [&] {
          auto rep = ctx.timer("equalizer", [&] { return equalizer_limit(ctx.pg, n, ctx.m, ctx.cfg.budget); });
          r.result = rep.equalizer.invariants;
          for (auto const& c : rep.checks) {
            r.checks.push_back(from_stage(c));
          }
        });
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  std::vector<Record> cmd_limit(Context& ctx) {
    std::vector<Record> out;
    for (auto n : degrees(ctx.cfg)) {
      if (ctx.cfg.gamma) {
        Record r{"gamma_equalizer", n, std::nullopt, {}};
        guarded(r.checks, "gamma_equalizer", [&] {
          auto rep = ctx.timer("gamma_equalizer", [&] { return gamma_equalizer(ctx.pg, n, ctx.cfg.budget); });
          r.result = rep.equalizer.invariants;
          for (auto const& c : rep.checks) {
            r.checks.push_back(from_stage(c));
          }
        });
        out.push_back(std::move(r));
      } else {
        Record r{"equalizer", n, std::nullopt, {}};
        guarded(r.checks, "equalizer_limit", [&] {
          auto rep = ctx.timer("equalizer", [&] { return equalizer_limit(ctx.pg, n, ctx.m, ctx.cfg.budget); });
          r.result = rep.equalizer.invariants;
          for (auto const& c : rep.checks) {
            r.checks.push_back(from_stage(c));
          }
          r.checks.push_back({"h_even = " + rep.h_even.invariants.to_string(), true, ""});
        });
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Output
  ////////////////////////////////////////////////////////////////////////

  bool all_pass(std::vector<Record> const& records) {
    for (auto const& r : records) {
      for (auto const& c : r.checks) {
        if (!c.pass) {
          return false;
        }
      }
    }
    return true;
  }

  std::string result_text(Record const& r) { return r.result ? r.result->to_string() : "?"; }

  void print_table(std::ostream& os, JobConfig const& cfg, std::vector<Record> const& records) {
    for (auto const& r : records) {
      if (r.quantity == "H") {
        os << "H_" << r.degree << " = " << result_text(r) << '\n';
      } else if (r.quantity == "gamma" || r.quantity == "J" || r.quantity == "ker_phi") {
        os << r.quantity << "_" << r.degree << " = " << result_text(r) << '\n';
      } else if (cfg.command == "limit" && r.quantity == "equalizer") {
        os << "equalizer = " << result_text(r);
        for (auto const& c : r.checks) {
          if (c.name.rfind("h_even = ", 0) == 0) {
            os << " ; " << c.name;
          }
        }
        os << " ; " << (all_pass({r}) ? "MATCH" : "MISMATCH") << '\n';
      } else if (cfg.command == "limit" && r.quantity == "gamma_equalizer") {
        os << "gamma-equalizer = " << result_text(r) << " ; "
           << (all_pass({r}) ? "PASS" : "FAIL") << '\n';
      } else {
        for (auto const& c : r.checks) {
          os << (c.pass ? "PASS " : "FAIL ") << r.quantity;
          if (r.degree != 0) {
            os << " n=" << r.degree;
          }
          os << ": " << c.name;
          if (!c.pass && !c.detail.empty()) {
            os << " (" << c.detail << ")";
          }
          os << '\n';
        }
      }
    }
    if (cfg.command == "verify") {
      std::size_t total = 0, passed = 0;
      for (auto const& r : records) {
        for (auto const& c : r.checks) {
          ++total;
          passed += c.pass;
        }
      }
      os << (passed == total ? "PASS" : "FAIL") << " summary: " << passed << "/" << total
         << " checks passed\n";
    }
  }

  void print_json(std::ostream&              os,
                  std::vector<Record> const& records,
                  std::size_t                order,
                  std::string const&         hash) {
    for (auto const& r : records) {
      json j = record_json(r);
      json checks = json::array();
      for (auto const& c : r.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}});
      }
      j["checks"]            = checks;
      j["group_order"]       = order;
      j["presentation_hash"] = hash;
      os << j.dump() << '\n';
    }
  }

  int run(JobConfig const& cfg) {
    Timer       timer(cfg.timings);
    std::string text = read_file(cfg.presentation_path);
    Presentation p;
    try {
      p = timer("parse", [&] { return parse_presentation(text); });
    } catch (ParseError const& e) {
      std::cerr << cfg.presentation_path << ": error: " << e.what() << '\n';
      return 1;
    }
    std::string coeff_text = cfg.coeff == "trivial" ? "trivial" : read_file(cfg.coeff);
    std::string hash       = hex(fnv1a(text));

    std::optional<std::filesystem::path> cache_file;
    if (!cfg.cache_dir.empty()) {
      cache_file = std::filesystem::path(cfg.cache_dir) / (job_key(cfg, text, coeff_text) + ".json");
    }

    PresentedGroup pg = timer("enumeration", [&] {
      return realize(p, coset_limit_from_environment());
    });

    std::optional<std::vector<Record>> records;
    if (cache_file) {
      records = cache_load(*cache_file);
    }
    if (!records) {
      Context ctx{cfg, pg, trivial_module(pg.group, 1), true, timer};
      if (cfg.coeff != "trivial") {
        ctx.m             = load_coefficients(coeff_text, pg);
        ctx.trivial_coeff = false;
      }
      if (cfg.command == "hom") {
        records = cmd_hom(ctx);
      } else if (cfg.command == "lie") {
        records = cmd_lie(ctx);
      } else if (cfg.command == "verify") {
        records = cmd_verify(ctx);
      } else {
        records = cmd_limit(ctx);
      }
      if (cache_file) {
        cache_store(*cache_file, *records);
      }
    }

    if (cfg.as_json) {
      print_json(std::cout, *records, pg.order(), hash);
    } else {
      print_table(std::cout, cfg, *records);
    }
    return all_pass(*records) ? 0 : 1;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral homology of finite groups from presentations"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-p,--presentation", cfg.presentation_path, "presentation file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("-n", cfg.n, "degree")->check(CLI::PositiveNumber);
    sub->add_option("--max-n", cfg.max_n, "all degrees up to this one")->check(CLI::PositiveNumber);
    sub->add_option("--coeff", cfg.coeff, "coefficient module file, or 'trivial'");
    sub->add_flag("--json", cfg.as_json, "one JSON object per line");
    sub->add_option("--cache", cfg.cache_dir, "cache directory");
    sub->add_option("--budget", cfg.budget, "largest lattice, in columns")->check(CLI::PositiveNumber);
    sub->add_flag("--timings", cfg.timings, "stage timings on stderr");
  };

  auto* hom    = app.add_subcommand("hom", "homology groups H_k(G, M)");
  auto* lie    = app.add_subcommand("lie", "gamma_n R / [gamma_n R, F], J_n and ker phi_n");
  auto* verify = app.add_subcommand("verify", "verification suites");
  auto* limit  = app.add_subcommand("limit", "equalizers over the doubling diagram");
  for (auto* sub : {hom, lie, verify, limit}) {
    common(sub);
  }
  verify->add_option("--suite", cfg.suite, "sequence|five|lie|split|oracle|limit|all");
  limit->add_flag("--gamma", cfg.gamma, "equalizer of the gamma quotients");

  CLI11_PARSE(app, argc, argv);
  for (auto* sub : {hom, lie, verify, limit}) {
    if (sub->parsed()) {
      cfg.command = sub->get_name();
    }
  }

  try {
    return run(cfg);
  } catch (BudgetExceeded const& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
