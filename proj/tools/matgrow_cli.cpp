#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "matgrow/classes.hpp"
#include "matgrow/geometry.hpp"
#include "matgrow/growth.hpp"
#include "matgrow/io.hpp"
#include "matgrow/modsum.hpp"
#include "matgrow/projection.hpp"
#include "matgrow/verify.hpp"

using namespace matgrow;

namespace {

// exit codes: 0 success, 1 domain error, 2 budget exhaustion
constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kBudgetExhausted = 2;

uint64_t default_budget() {
  if (const char* env = std::getenv("MATGROW_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return static_cast<uint64_t>(v);
  }
  return 1'000'000;
}

ClassSpec load_class_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open class spec: " + path);
  auto slash = path.find_last_of('/');
  std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
  return parse_class_spec(in, dir);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write output: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-geometry and growth-rate workbench"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "parallelism cap (results are schedule independent)")
      ->default_val(1);

  auto* construct = app.add_subcommand("construct", "build a named matroid");
  std::string kind, out_path;
  int cn = 3, cq = 2, cm = 4;
  construct->add_option("kind", kind, "pg | ag | uniform")->required();
  construct->add_option("-n,--rank", cn, "rank");
  construct->add_option("-q,--order", cq, "field order");
  construct->add_option("-m,--size", cm, "ground size (uniform)");
  construct->add_option("-o,--out", out_path, "output file");

  auto* density = app.add_subcommand("density", "density report of a certificate");
  std::string cert_path;
  density->add_option("certificate", cert_path, "certificate file")->required();

  auto* stack = app.add_subcommand("stack", "search for a layered witness");
  std::string stack_matroid;
  int sq = 2, st = 2, sk = 1;
  stack->add_option("matroid", stack_matroid)->required();
  stack->add_option("-q,--order", sq, "field order");
  stack->add_option("-t,--layer-rank", st, "layer rank cap");
  stack->add_option("-k,--layers", sk, "layer count");

  auto* minor = app.add_subcommand("minor", "exhaustive minor test");
  std::string host_path, pattern_path;
  minor->add_option("--host", host_path)->required();
  minor->add_option("--pattern", pattern_path)->required();

  auto* represent = app.add_subcommand("represent", "representability over GF(q)");
  std::string rep_path;
  int rq = 2;
  represent->add_option("matroid", rep_path)->required();
  represent->add_option("-q,--order", rq, "field order");

  auto* sum = app.add_subcommand("sum", "modular sum of a two-block spec");
  std::string sum_path, sum_out;
  sum->add_option("spec", sum_path, "sum spec file")->required();
  sum->add_option("-o,--out", sum_out, "output file");

  auto* growth = app.add_subcommand("growth", "exhaustive growth value");
  std::string growth_class;
  int growth_rank = 2;
  bool growth_table = false;
  growth->add_option("--class", growth_class, "class spec file")->required();
  growth->add_option("--rank", growth_rank, "rank")->required();
  growth->add_flag("--table", growth_table,
                   "tabulate every rank up to --rank with a profile summary");

  auto* kds = app.add_subcommand("kdsearch", "order-maximal profile search");
  std::string kds_class;
  int kds_rank = 3, kds_kmax = 1;
  kds->add_option("--class", kds_class, "class spec file")->required();
  kds->add_option("--rank", kds_rank, "candidate rank")->required();
  kds->add_option("--kmax", kds_kmax, "largest k cell");

  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string suite;
  uint64_t seeds = 200;
  double budget_opt = 0;
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--seeds", seeds, "seeded instances per family");
  verify->add_option("--budget", budget_opt, "node budget");

  CLI11_PARSE(app, argc, argv);
  (void)threads;  // cap only; execution is sequential and deterministic

  Budget budget;
  budget.nodes = default_budget();

  try {
    if (*construct) {
      Matroid m;
      if (kind == "pg")
        m = pg(cn, cq);
      else if (kind == "ag")
        m = ag(cn, cq);
      else if (kind == "uniform")
        m = Matroid::uniform(cn, cm);
      else
        throw std::invalid_argument("construct: unknown kind '" + kind + "'");
      std::string name = kind + "_" + std::to_string(cn);
      emit(out_path, format_matroid(m, name));
      if (!out_path.empty())
        std::cout << "wrote " << out_path << " (" << m.size()
                  << " elements, rank " << m.rank() << ")\n";
      return kOk;
    }
    if (*density) {
      ProjectionCertificate cert = load_certificate(cert_path);
      std::cout << format_density_report(density_params(cert), cert.q);
      return kOk;
    }
    if (*stack) {
      Matroid m = load_matroid(stack_matroid);
      auto w = find_stack(m, sq, st, sk, budget);
      if (!w) {
        std::cout << "none\n";
        return kOk;
      }
      std::cout << format_stack_witness(*w);
      return kOk;
    }
    if (*minor) {
      Matroid host = load_matroid(host_path);
      Matroid pattern = load_matroid(pattern_path);
      auto w = has_minor(host, pattern);
      if (!w) {
        std::cout << "none\n";
        return kOk;
      }
      std::cout << "minor contract " << w->contracted.to_string() << " delete "
                << w->deleted.to_string() << "\n";
      return kOk;
    }
    if (*represent) {
      Matroid m = load_matroid(rep_path);
      std::cout << (is_representable(m, rq) ? "representable"
                                            : "not-representable")
                << " q=" << rq << "\n";
      return kOk;
    }
    if (*sum) {
      std::ifstream in(sum_path);
      if (!in) throw std::invalid_argument("cannot open sum spec: " + sum_path);
      SumSpec spec = read_sum_spec(in);
      Matroid s = modular_sum(spec);
      emit(sum_out, format_matroid(s, "sum"));
      if (!sum_out.empty())
        std::cout << "wrote " << sum_out << " (" << s.size()
                  << " elements, rank " << s.rank() << ")\n";
      return kOk;
    }
    if (*growth) {
      ClassSpec spec = load_class_spec(growth_class);
      std::optional<int> q0;
      if (!spec.fields.empty())
        q0 = *std::min_element(spec.fields.begin(), spec.fields.end());
      bool all_exact = true;
      if (growth_table) {
        std::cout << "n h(n) formula match\n";
        for (int n = 1; n <= growth_rank; ++n) {
          HResult h = h_exhaustive(spec, n, budget);
          all_exact = all_exact && h.exact;
          std::cout << n << ' ' << h.value << ' ';
          if (q0) {
            long long formula = pg_size(*q0, n);
            std::cout << formula << ' '
                      << (h.value == formula ? "yes" : "no");
          } else {
            std::cout << "- -";
          }
          std::cout << (h.exact ? "" : " (inexact)") << "\n";
        }
        std::cout << "profile q=" << (q0 ? *q0 : 0) << " k=0 d=0 exact="
                  << (all_exact ? "true" : "false") << "\n";
        return all_exact ? kOk : kBudgetExhausted;
      }
      HResult h = h_exhaustive(spec, growth_rank, budget);
      std::cout << "h(" << growth_rank << ")=" << h.value;
      if (q0) {
        long long formula = pg_size(*q0, growth_rank);
        std::cout << " formula=" << formula << " "
                  << (h.value == formula ? "match" : "mismatch");
      }
      std::cout << (h.exact ? "" : " (inexact: budget hit)") << "\n";
      return h.exact ? kOk : kBudgetExhausted;
    }
    if (*kds) {
      ClassSpec spec = load_class_spec(kds_class);
      SearchReport rep = kd_search(spec, kds_rank, kds_kmax, budget);
      if (!rep.found) {
        std::cout << "no profile cell found up to kmax\n";
        return rep.truncated ? kBudgetExhausted : kOk;
      }
      std::cout << "profile q=" << rep.profile.q << " k=" << rep.profile.k
                << " d=" << rep.profile.d
                << " exact=" << (rep.truncated ? "false" : "true")
                << " queries=" << rep.queries
                << " witnesses=" << rep.witnesses.size() << "\n";
      return rep.truncated ? kBudgetExhausted : kOk;
    }
    if (*verify) {
      SuiteOptions opts;
      opts.seeds = seeds;
      opts.budget = budget;
      if (budget_opt > 0) opts.budget.nodes = static_cast<uint64_t>(budget_opt);
      SuiteResult res = run_suite(suite, opts);
      std::cout << (res.pass ? "pass" : "FAIL") << " " << res.name << ": "
                << res.detail << "\n";
      if (!res.counterexample_path.empty())
        std::cout << "counterexample: " << res.counterexample_path << "\n";
      return res.pass ? kOk : kDomainError;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudgetExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kDomainError;
}
