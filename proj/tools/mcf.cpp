// Command-line front end. Data goes to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 criterion or hypothesis violation (report still
// printed), 2 input error, 3 refinement budget exhausted.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcf/bounds.hpp"
#include "mcf/convergents.hpp"
#include "mcf/errors.hpp"
#include "mcf/expansion.hpp"
#include "mcf/io.hpp"
#include "mcf/periodic_cubic.hpp"
#include "mcf/transcendence.hpp"

namespace {

using namespace mcf;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

int g_exit = kOk;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<BigInt> ints(const std::vector<std::string>& v) {
  std::vector<BigInt> out;
  for (const auto& s : v) out.push_back(parse_int(s));
  return out;
}

PartialQuotients load_pq(const std::string& path) { return parse_pq(read_json_file(path)); }

// ---------------------------------------------------------------- expand

struct ExpandOpts {
  std::string input;
  std::size_t steps = 10;
  bool trace = false;
};

void run_expand(const ExpandOpts& o) {
  ExpansionRecord rec = expand(parse_inputs(read_json_file(o.input)), o.steps, o.trace);
  std::cout << to_jsonl(rec);
}

// ---------------------------------------------------------------- convergents

struct ConvOpts {
  std::string pq, input, format = "csv";
  std::size_t steps = 10;
  std::optional<std::size_t> count;
};

void run_convergents(const ConvOpts& o) {
  PartialQuotients pq;
  if (!o.pq.empty()) {
    pq = load_pq(o.pq);
  } else if (!o.input.empty()) {
    pq = expand(parse_inputs(read_json_file(o.input)), o.steps, false).pq;
  } else {
    throw InputError("convergents needs --pq or --input");
  }
  std::vector<Column> cols = conv_stream(pq, o.count.value_or(pq.full_length()));
  const std::size_t m = pq.m;
  if (o.format == "csv") {
    std::cout << "n";
    for (std::size_t i = 1; i <= m; ++i) std::cout << ",A" << i;
    std::cout << ",C\n";
    for (std::size_t n = 0; n < cols.size(); ++n) {
      std::cout << n;
      for (const auto& v : cols[n]) std::cout << "," << to_string(v);
      std::cout << "\n";
    }
  } else {
    for (std::size_t n = 0; n < cols.size(); ++n) {
      Json line;
      line["n"] = n;
      Json a = Json::array();
      for (std::size_t i = 0; i < m; ++i) a.push_back(to_string(cols[n][i]));
      line["A"] = std::move(a);
      line["C"] = to_string(cols[n][m]);
      std::cout << line.dump() << "\n";
    }
  }
}

// ---------------------------------------------------------------- periodic

struct PeriodicOpts {
  std::vector<std::string> pre_a, pre_b, per_a, per_b;
};

PeriodicSpec periodic_spec(const PeriodicOpts& o) {
  return PeriodicSpec{ints(o.pre_a), ints(o.pre_b), ints(o.per_a), ints(o.per_b)};
}

void run_periodic_solve(const PeriodicOpts& o) {
  CubicCertificate cert = solve_periodic(periodic_spec(o));
  emit(to_json(cert));
  if (!cert.residual_ok || (cert.bound && !cert.bound_holds)) g_exit = kViolation;
}

// ---------------------------------------------------------------- construct

struct LiouvilleOpts {
  std::size_t m = 2;
  std::string delta = "1", a0 = "0";
  std::vector<std::string> rules;
  std::size_t depth = 8;
  std::uint64_t seed = 0;
};

LiouvilleSpec liouville_spec(const LiouvilleOpts& o) {
  LiouvilleSpec s;
  s.m = o.m;
  s.delta = parse_rational(o.delta);
  s.a0 = parse_int(o.a0);
  s.depth = o.depth;
  std::vector<std::string> rules = o.rules;
  if (rules.empty()) rules.assign(o.m > 0 ? o.m - 1 : 0, "const:0");
  for (std::size_t k = 0; k < rules.size(); ++k) s.free.push_back(EntryRule::parse(rules[k], o.seed + k));
  return s;
}

struct QuasiOpts {
  std::size_t m = 2;
  std::string schedule, base;
  std::size_t depth = 20;
  std::uint64_t seed = 0;
};

QuasiPeriodicSpec quasi_spec(const QuasiOpts& o) {
  QuasiPeriodicSpec s;
  s.m = o.m;
  s.schedule = parse_schedule(read_json_file(o.schedule));
  s.base = parse_rules(read_json_file(o.base), o.seed);
  return s;
}

// ---------------------------------------------------------------- verify

struct BoundsOpts {
  std::string pq, input;
  std::optional<std::size_t> depth;
  std::optional<std::string> box_n, box_m;
};

void run_verify_bounds(const BoundsOpts& o) {
  PartialQuotients pq = load_pq(o.pq);
  std::optional<BoxHypothesis> box;
  if (o.box_n || o.box_m) {
    if (!o.box_n || !o.box_m) throw InputError("--box-n and --box-m go together");
    box = BoxHypothesis{parse_int(*o.box_n), parse_int(*o.box_m)};
  }
  std::vector<RealValue> inputs;
  if (!o.input.empty()) inputs = parse_inputs(read_json_file(o.input));
  const std::size_t len = pq.full_length();
  BoundReport r = bound_checks(pq, o.depth.value_or(len == 0 ? 0 : len - 1), box, o.input.empty() ? nullptr : &inputs);
  emit(to_json(r));
  if (!r.ok()) g_exit = kViolation;
}

struct GrowthOpts {
  std::string pq;
  std::optional<std::size_t> depth;
  std::optional<std::string> max_quotient;
  std::optional<unsigned long> d;
};

void run_verify_growth(const GrowthOpts& o) {
  PartialQuotients pq = load_pq(o.pq);
  GrowthOptions g;
  if (o.max_quotient) g.max_quotient = parse_int(*o.max_quotient);
  g.d = o.d;
  const std::size_t len = pq.full_length();
  GrowthReport r = growth_check(pq, o.depth.value_or(len == 0 ? 0 : len - 1), g);
  emit(to_json(r));
  if (!r.ok()) g_exit = kViolation;
}

void emit_report(const CriterionReport& r) {
  emit(to_json(r));
  if (!r.holds()) g_exit = kViolation;
}

// ---------------------------------------------------------------- bench

struct BenchOpts {
  std::string source = "liouville";
  std::string pq;
  std::string quotient = "1";
  std::size_t depth = 12;
  std::optional<unsigned long> d;
};

void run_bench_growth(const BenchOpts& o) {
  PartialQuotients pq;
  if (o.source == "pq") {
    if (o.pq.empty()) throw InputError("--source pq needs --pq");
    pq = load_pq(o.pq);
  } else if (o.source == "liouville") {
    LiouvilleSpec s;
    s.free = {EntryRule::constant(BigInt(0))};
    s.depth = o.depth;
    pq = construct_liouville(s);
  } else if (o.source == "constant") {
    BigInt q = parse_int(o.quotient);
    if (q < 1) throw InputError("--quotient must be at least 1");
    pq = PartialQuotients(2, {std::vector<BigInt>(o.depth + 1, q), std::vector<BigInt>(o.depth + 1, BigInt(0))});
  } else {
    throw InputError("--source must be liouville, constant or pq");
  }
  std::optional<RationalInterval> K;
  if (o.d) K = growth_constant_k(*o.d, pq.m);

  std::cout << "n,bits,micros\n";
  if (o.depth == 0) return;
  ConvergentStream s(pq);
  for (std::size_t n = 0; n <= o.depth; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    if (!s.advance()) break;
    auto t1 = std::chrono::steady_clock::now();
    const BigInt& c = s.column(0)[pq.m];
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    std::cout << n << "," << mpz_sizeinbase(c.get_mpz_t(), 2) << "," << micros << "\n";
    // log log C_{n+1} < K n for n >= 1, checked once C_{n+1} exists.
    if (K && n >= 2 && !loglog_below(c, RationalInterval(BigRational(static_cast<unsigned long>(n - 1))) * *K)) {
      std::cerr << "log log C_" << n << " >= K (" << n - 1 << ")\n";
      g_exit = kViolation;
    }
  }
}

// ---------------------------------------------------------------- main

int code_for(const std::exception& e) {
  if (dynamic_cast<const NonTerminating*>(&e) || dynamic_cast<const RootSelectionAmbiguous*>(&e)) return kBudget;
  if (dynamic_cast<const HypothesisViolated*>(&e) || dynamic_cast<const PreconditionViolated*>(&e)) {
    return kViolation;
  }
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multidimensional continued fractions: expansion, convergents, periodic cubics, criteria"};
  app.name("mcf");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.add_option_function<std::size_t>(
         "--budget", [](const std::size_t& b) { set_refinement_budget(b); },
         "Refinement budget per decision (overrides MCF_PRECISION_BUDGET)")
      ->check(CLI::PositiveNumber);

  ExpandOpts eo;
  auto* expand_cmd = app.add_subcommand("expand", "Run the Jacobi-Perron algorithm; JSON lines per index");
  expand_cmd->add_option("--input", eo.input, "JSON file with the input reals")->required()->check(CLI::ExistingFile);
  expand_cmd->add_option("--steps", eo.steps, "Number of indices to produce")->capture_default_str();
  expand_cmd->add_flag("--trace", eo.trace, "Keep complete quotients (exact inputs)");
  expand_cmd->callback([&] { run_expand(eo); });

  ConvOpts co;
  auto* conv_cmd = app.add_subcommand("convergents", "Convergent numerators and denominators");
  conv_cmd->add_option("--pq", co.pq, "JSON file with partial quotients")->check(CLI::ExistingFile);
  conv_cmd->add_option("--input", co.input, "JSON file with input reals to expand first")->check(CLI::ExistingFile);
  conv_cmd->add_option("--steps", co.steps, "Expansion steps when --input is used")->capture_default_str();
  conv_cmd->add_option("--count", co.count, "Number of columns (default: all)");
  conv_cmd->add_option("--format", co.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  conv_cmd->callback([&] { run_convergents(co); });

  PeriodicOpts po;
  auto* periodic_cmd = app.add_subcommand("periodic", "Periodic expansions");
  periodic_cmd->require_subcommand(1);
  auto* solve_cmd = periodic_cmd->add_subcommand("solve", "Cubic certificate of a periodic pair");
  solve_cmd->add_option("--pre-a", po.pre_a, "Pre-period of a");
  solve_cmd->add_option("--pre-b", po.pre_b, "Pre-period of b");
  solve_cmd->add_option("--per-a", po.per_a, "Period of a")->required();
  solve_cmd->add_option("--per-b", po.per_b, "Period of b")->required();
  solve_cmd->callback([&] { run_periodic_solve(po); });

  auto* construct_cmd = app.add_subcommand("construct", "Build partial quotients for a criterion");
  construct_cmd->require_subcommand(1);
  LiouvilleOpts lo;
  auto* cl_cmd = construct_cmd->add_subcommand("liouville", "Liouville-type quotients; JSON partial quotients");
  cl_cmd->add_option("--m", lo.m, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
  cl_cmd->add_option("--delta", lo.delta, "Positive rational exponent")->capture_default_str();
  cl_cmd->add_option("--a0", lo.a0, "Entry a^(1)_0")->capture_default_str();
  cl_cmd->add_option("--b-rule,--free-rule", lo.rules,
                     "Rules for a^(2)..a^(m): const:v, cycle:v1,v2, list:v1,v2, random:max (default const:0)");
  cl_cmd->add_option("--depth", lo.depth, "Last index")->capture_default_str();
  cl_cmd->add_option("--seed", lo.seed, "Seed for random rules")->capture_default_str();
  cl_cmd->callback([&] { emit(pq_to_json(construct_liouville(liouville_spec(lo)))); });

  QuasiOpts qo;
  auto* cq_cmd = construct_cmd->add_subcommand("quasiperiodic", "Quasi-periodic quotients; JSON partial quotients");
  cq_cmd->add_option("--m", qo.m, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
  cq_cmd->add_option("--schedule", qo.schedule, "JSON file: [{n, r, lambda}, ...]")->required()->check(CLI::ExistingFile);
  cq_cmd->add_option("--base", qo.base, "JSON file: one rule string per sequence")->required()->check(CLI::ExistingFile);
  cq_cmd->add_option("--depth", qo.depth, "Last index")->capture_default_str();
  cq_cmd->add_option("--seed", qo.seed, "Seed for random rules")->capture_default_str();
  cq_cmd->callback([&] { emit(pq_to_json(build_quasiperiodic(quasi_spec(qo), qo.depth))); });

  auto* verify_cmd = app.add_subcommand("verify", "Check hypotheses and bounds at finite depth");
  verify_cmd->require_subcommand(1);

  std::string adm_pq;
  auto* va_cmd = verify_cmd->add_subcommand("admissible", "Admissibility of partial quotients");
  va_cmd->add_option("--pq", adm_pq, "JSON file with partial quotients")->required()->check(CLI::ExistingFile);
  va_cmd->callback([&] {
    AdmissibilityReport r = check_admissible(load_pq(adm_pq));
    emit(to_json(r));
    if (!r.ok()) g_exit = kViolation;
  });

  BoundsOpts bo;
  auto* vb_cmd = verify_cmd->add_subcommand("bounds", "Numerator, box and tilde bounds");
  vb_cmd->add_option("--pq", bo.pq, "JSON file with partial quotients")->required()->check(CLI::ExistingFile);
  vb_cmd->add_option("--input", bo.input, "JSON file with the inputs, checked against the box")->check(CLI::ExistingFile);
  vb_cmd->add_option("--depth", bo.depth, "Last index checked (default: all)");
  vb_cmd->add_option("--box-n", bo.box_n, "Box hypothesis N: floor of the first input");
  vb_cmd->add_option("--box-m", bo.box_m, "Box hypothesis M: floor of the second input");
  vb_cmd->callback([&] { run_verify_bounds(bo); });

  GrowthOpts go;
  auto* vg_cmd = verify_cmd->add_subcommand("growth", "Growth of the denominators C_n");
  vg_cmd->add_option("--pq", go.pq, "JSON file with partial quotients")->required()->check(CLI::ExistingFile);
  vg_cmd->add_option("--depth", go.depth, "Last index checked (default: all)");
  vg_cmd->add_option("--max-quotient", go.max_quotient, "Bound M on a_n, enabling the eta check");
  vg_cmd->add_option("--d", go.d, "Exponent d, enabling the log log check")->check(CLI::PositiveNumber);
  vg_cmd->callback([&] { run_verify_growth(go); });

  std::string vl_pq, vl_delta = "1";
  std::size_t vl_depth = 0;
  auto* vl_cmd = verify_cmd->add_subcommand("liouville", "a^(1)_n > max |At_n| C_{n-1}^delta");
  vl_cmd->add_option("--pq", vl_pq, "JSON file with partial quotients")->required()->check(CLI::ExistingFile);
  vl_cmd->add_option("--delta", vl_delta, "Positive rational exponent")->capture_default_str();
  vl_cmd->add_option("--depth", vl_depth, "Last index checked")->required();
  vl_cmd->callback([&] { emit_report(verify_liouville(load_pq(vl_pq), parse_rational(vl_delta), vl_depth)); });

  QuasiOpts m1q;
  unsigned long m1_d = 1;
  std::string m1_c = "1";
  auto* vm1_cmd = verify_cmd->add_subcommand("main1", "Quasi-periodic criterion with a_{i+1} < C_i^d and r_k < c n_k");
  vm1_cmd->add_option("--schedule", m1q.schedule, "JSON file: [{n, r, lambda}, ...]")->required()->check(CLI::ExistingFile);
  vm1_cmd->add_option("--base", m1q.base, "JSON file: one rule string per sequence")->required()->check(CLI::ExistingFile);
  vm1_cmd->add_option("--depth", m1q.depth, "Last index")->capture_default_str();
  vm1_cmd->add_option("--seed", m1q.seed, "Seed for random rules")->capture_default_str();
  vm1_cmd->add_option("--d", m1_d, "Exponent d")->capture_default_str()->check(CLI::PositiveNumber);
  vm1_cmd->add_option("--c", m1_c, "Rational constant c")->capture_default_str();
  vm1_cmd->callback([&] { emit_report(main1_check(quasi_spec(m1q), m1_d, parse_rational(m1_c), m1q.depth)); });

  QuasiOpts m2q;
  std::string m2_M = "1", m2_N = "1", m2_variant = "statement";
  auto* vm2_cmd = verify_cmd->add_subcommand("main2", "Quasi-periodic criterion with bounded quotients");
  vm2_cmd->add_option("--schedule", m2q.schedule, "JSON file: [{n, r, lambda}, ...]")->required()->check(CLI::ExistingFile);
  vm2_cmd->add_option("--base", m2q.base, "JSON file: one rule string per sequence")->required()->check(CLI::ExistingFile);
  vm2_cmd->add_option("--depth", m2q.depth, "Last index")->capture_default_str();
  vm2_cmd->add_option("--seed", m2q.seed, "Seed for random rules")->capture_default_str();
  vm2_cmd->add_option("--M", m2_M, "Bound on a_k and b_k")->capture_default_str();
  vm2_cmd->add_option("--N", m2_N, "Bound on r_k")->capture_default_str();
  vm2_cmd->add_option("--variant", m2_variant, "Constant B variant")
      ->check(CLI::IsMember({"statement", "lemma38", "proof18"}))
      ->capture_default_str();
  vm2_cmd->callback([&] {
    emit_report(main2_check(quasi_spec(m2q), parse_int(m2_M), parse_int(m2_N), parse_variant(m2_variant), m2q.depth));
  });

  BenchOpts bn;
  auto* bench_cmd = app.add_subcommand("bench", "Timing and growth measurements");
  bench_cmd->require_subcommand(1);
  auto* bg_cmd = bench_cmd->add_subcommand("growth", "CSV of n, bit length of C_n and step time");
  bg_cmd->add_option("--source", bn.source, "Quotient source")
      ->check(CLI::IsMember({"liouville", "constant", "pq"}))
      ->capture_default_str();
  bg_cmd->add_option("--pq", bn.pq, "JSON file with partial quotients (--source pq)")->check(CLI::ExistingFile);
  bg_cmd->add_option("--quotient", bn.quotient, "Constant a_n (--source constant)")->capture_default_str();
  bg_cmd->add_option("--depth", bn.depth, "Last index")->capture_default_str();
  bg_cmd->add_option("--d", bn.d, "Declared exponent d: assert log log C_{n+1} < K n")->check(CLI::PositiveNumber);
  bg_cmd->callback([&] { run_bench_growth(bn); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const HypothesisViolated& e) {
    // A failed hypothesis is a result, so it is reported on stdout as well.
    Json j;
    j["hypothesis_violated"]["index"] = e.index();
    j["hypothesis_violated"]["detail"] = e.what();
    emit(j);
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e);
  }
  return g_exit;
}
