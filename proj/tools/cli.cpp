#include "cli.hpp"

#include "complab/budget.hpp"
#include "complab/error.hpp"
#include "complab/fcompression.hpp"
#include "complab/random.hpp"
#include "complab/reduction.hpp"
#include "complab/sensitivity.hpp"
#include "complab/serialization.hpp"
#include "complab/tournament.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace complab::cli {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct LemmaArgs {
  std::string lemma;
  unsigned t = 8;
  unsigned m = 2;
  unsigned r = 0;
  unsigned alphabet = 0;  // 0: 2 for pinsker and kl, 3 for vajda
  unsigned trials = 1;
  std::string arith = "exact";
  std::string input = "uniform";
};

struct TournamentArgs {
  std::string kind = "random";
  unsigned t = 3;
  unsigned vertices = 8;
  unsigned n = 3;
  std::string language = "builtin:empty";
  unsigned trials = 1;
  std::uint64_t exhaustive_limit = 1'000'000;
};

struct ReduceArgs {
  std::string language;
  unsigned n = 3;
  std::string compression = "ideal-or";
  unsigned coin_bits = 3;
  unsigned t = 4;
  std::string delta;
  std::string big_delta;
  std::string mode = "base";
  unsigned alphabet = 2;
  bool audit = false;
  std::uint64_t exhaustive_limit = 1'000'000;
};

struct FcompArgs {
  std::string f;
  unsigned t = 4;
  unsigned n = 3;
  std::string language = "builtin:half";
  bool audit = false;
};

/// Stream for --out: stdout for "-", otherwise a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  void emit(const Json& j) { *stream_ << j.dump() << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// builtin:NAME, random:SEED, code:K, or a JSON file.
ToyLanguage load_language(const std::string& spec, unsigned n) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (head == "builtin") return builtin_language(tail, n);
    if (head == "random") return random_language(n, std::stoull(tail));
    if (head == "code") return language_from_code(n, std::stoull(tail, nullptr, 0));
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed language spec '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw DomainError("malformed language spec '" + spec + "'");
  }
  return language_from_json(read_json_file(spec));
}

SetEncodedCompression load_compression(const std::string& spec, const ToyLanguage& language,
                                       unsigned t, unsigned coin_bits) {
  if (spec == "ideal-or") return ideal_or_compression(language, t);
  if (spec.rfind("noisy-or:", 0) == 0) {
    const std::string rest = spec.substr(9);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw DomainError("expected noisy-or:ES,EC");
    return noisy_or_compression(language, t, parse_rational(rest.substr(0, comma)),
                                parse_rational(rest.substr(comma + 1)), coin_bits);
  }
  const Json j = read_json_file(spec);
  const std::string kind = j.value("kind", "");
  if (kind == "ideal-or") return ideal_or_compression(language, t);
  if (kind == "noisy-or") {
    return noisy_or_compression(language, t, rational_from_json(j.at("e_s")),
                                rational_from_json(j.at("e_c")), j.value("coin_bits", coin_bits));
  }
  throw DomainError("unknown compression kind '" + kind + "' in '" + spec + "'");
}

Json rational_field(const Rational& r) { return to_string(r); }

// --- verify-lemma ---------------------------------------------------------

template <Mass M>
ProductDistribution<M> random_product(std::uint32_t k, std::size_t t, Rng& rng) {
  // Factors with small integer weights, so exact masses stay short.
  std::vector<typename ProductDistribution<M>::Factor> factors;
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<std::uint64_t> w(k);
    std::uint64_t total = 0;
    for (auto& x : w) total += (x = 1 + rng.below(4));
    std::vector<std::pair<Symbol, M>> entries;
    for (Symbol s = 0; s < k; ++s) entries.emplace_back(s, mass_from_counts<M>(w[s], total));
    detail::absorb_rounding(entries);
    factors.push_back(Distribution<Symbol, M>::from_entries(std::move(entries)));
  }
  return ProductDistribution<M>(k, std::move(factors));
}

template <Mass M>
LemmaReport lemma_report(LemmaId id, const CompressiveMap& f, const LemmaArgs& args, Rng& rng) {
  switch (id) {
    case LemmaId::pinsker_sensitivity:
      return verify_pinsker_sensitivity<M>(f);
    case LemmaId::vajda_sensitivity:
      return verify_vajda_sensitivity<M>(f);
    case LemmaId::kl_bound:
      break;
  }
  const auto x = args.input == "random" ? random_product<M>(f.alphabet_size(), f.arity(), rng)
                                        : ProductDistribution<M>::uniform(f.alphabet_size(), f.arity());
  return verify_kl_bound(f, x);
}

int verify_lemma(const LemmaArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  const LemmaId id = lemma_from_string(args.lemma);
  if (args.arith != "exact" && args.arith != "float") throw DomainError("--arith must be exact or float");
  if (args.input != "uniform" && args.input != "random") throw DomainError("--input must be uniform or random");
  if (id != LemmaId::kl_bound && args.input != "uniform") {
    throw DomainError("the sensitivity lemmas assume uniform input");
  }
  const unsigned k = args.alphabet != 0 ? args.alphabet : (id == LemmaId::vajda_sensitivity ? 3 : 2);
  const Json config{{"subcommand", "verify-lemma"}, {"lemma", to_string(id)}, {"t", args.t},
                    {"m", args.m},  {"r", args.r},  {"alphabet_size", k},
                    {"trials", args.trials}, {"seed", common.seed}, {"arith", args.arith},
                    {"input", args.input}};
  Sink sink(common.out, out);
  Json failures = Json::array();
  for (unsigned trial = 0; trial < args.trials; ++trial) {
    const std::uint64_t seed = mix_seed(common.seed, trial);
    const CompressiveMap f = random_compressive_map(args.t, args.m, args.r, seed, k);
    Rng rng(mix_seed(seed, 1));
    const LemmaReport report = args.arith == "exact" ? lemma_report<Rational>(id, f, args, rng)
                                                     : lemma_report<double>(id, f, args, rng);
    const bool exact_ok = report.holds_exactly().value_or(true);
    const double information = report.params.value("information", 0.0);
    const bool info_ok = information <= args.m + kFloatTolerance;
    const bool ok = report.holds() && report.chain_holds() && exact_ok && info_ok;
    Json line = to_json(report);
    line["trial"] = trial;
    line["map_seed"] = seed;
    line["ok"] = ok;
    line["config"] = config;
    sink.emit(line);
    if (!ok) failures.push_back(trial);
  }
  if (!failures.empty()) {
    err << Json{{"status", "failed"}, {"reason", "lemma check failed"}, {"trials", failures}}.dump() << '\n';
    return kFailed;
  }
  return kOk;
}

// --- tournament -----------------------------------------------------------

int tournament(const TournamentArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  if (args.kind != "random" && args.kind != "ideal-or") throw DomainError("--kind must be random or ideal-or");
  Json config{{"subcommand", "tournament"}, {"kind", args.kind}, {"t", args.t},
              {"trials", args.trials},      {"seed", common.seed}};
  if (args.kind == "random") {
    config["vertices"] = args.vertices;
  } else {
    config["n"] = args.n;
    config["language"] = args.language;
  }
  Sink sink(common.out, out);
  Json failures = Json::array();
  for (unsigned trial = 0; trial < args.trials; ++trial) {
    const std::uint64_t seed = mix_seed(common.seed, trial);
    std::optional<HypergraphTournament> s;
    unsigned input_length = args.n;
    if (args.kind == "random") {
      std::vector<Instance> v(args.vertices);
      for (Instance i = 0; i < args.vertices; ++i) v[i] = i;
      input_length = 32;
      s.emplace(random_tournament(v, args.t, seed));
    } else {
      const ToyLanguage language = load_language(args.language, args.n);
      const auto a = ideal_or_compression(language, args.t);
      s.emplace(selector_from_compression(a, language.no_instances(), args.t, default_small_delta(a)));
    }
    const DominatingSet d = greedy_dominating_set(*s, {args.exhaustive_limit, seed});
    const auto check = verify_domination(*s, d, s->vertices());
    const double bound = dominating_set_size_bound(args.t, s->vertices().size());
    const bool size_ok = static_cast<double>(d.elements.size()) <= bound + kFloatTolerance;
    const bool trace_ok = trace_within_bound(d, s->vertices().size());
    const bool ok = check.all_dominated && size_ok && trace_ok;
    Json line{{"trial", trial},
              {"vertices", s->vertices().size()},
              {"size", d.elements.size()},
              {"size_bound", bound},
              {"all_dominated", check.all_dominated},
              {"undominated", check.undominated},
              {"trace_ok", trace_ok},
              {"ok", ok},
              {"dominating_set", to_json(d, input_length)},
              {"config", config}};
    sink.emit(line);
    if (!ok) failures.push_back(trial);
  }
  if (!failures.empty()) {
    err << Json{{"status", "failed"}, {"reason", "dominating set check failed"}, {"trials", failures}}.dump()
        << '\n';
    return kFailed;
  }
  return kOk;
}

// --- reduce ---------------------------------------------------------------

int reduce(const ReduceArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  if (args.mode != "base" && args.mode != "tlogt") throw DomainError("--mode must be base or tlogt");
  if (args.language.empty()) throw DomainError("--language is required");
  const ToyLanguage language = load_language(args.language, args.n);
  const auto a = load_compression(args.compression, language, args.t, args.coin_bits);
  const bool tlogt = args.mode == "tlogt";
  Thresholds th;
  th.big_delta = args.big_delta.empty() ? (tlogt ? Rational(1) : default_big_delta(a))
                                        : parse_rational(args.big_delta);
  th.small_delta = args.delta.empty() ? (tlogt ? default_tlogt_delta(a) : default_small_delta(a))
                                      : parse_rational(args.delta);
  th.validate();
  const Json config{{"subcommand", "reduce"},
                    {"language", args.language},
                    {"n", language.input_length()},
                    {"compression", a.name()},
                    {"e_s", rational_field(a.soundness_error())},
                    {"e_c", rational_field(a.completeness_error())},
                    {"coin_bits", a.coin_bits()},
                    {"t", args.t},
                    {"mode", args.mode},
                    {"alphabet_size", args.alphabet},
                    {"Delta", rational_field(th.big_delta)},
                    {"delta", rational_field(th.small_delta)},
                    {"seed", common.seed}};
  const GreedyOptions greedy{args.exhaustive_limit, common.seed};
  Sink sink(common.out, out);
  if (!args.audit) {
    const Advice advice = tlogt ? build_advice_tlogt(language, a, args.t, args.alphabet, th.small_delta, greedy)
                                : build_advice(language, a, args.t, th.small_delta, greedy);
    sink.emit(Json{{"advice", to_json(advice)}, {"config", config}});
    return kOk;
  }
  AuditOptions options;
  options.reduction = tlogt ? ReductionMode::tlogt : ReductionMode::base;
  options.alphabet_size = args.alphabet;
  options.greedy = greedy;
  const AuditReport report = audit_language(language, a, args.t, th, options);
  Json line = to_json(report);
  line["config"] = config;
  sink.emit(line);
  if (report.agreements != report.inputs) {
    err << Json{{"status", "failed"}, {"reason", "audit disagreement"}, {"agreement", report.agreement()}}.dump()
        << '\n';
    return kFailed;
  }
  return kOk;
}

// --- fcomp ----------------------------------------------------------------

SymmetricFunction load_function(const std::string& spec, unsigned t) {
  if (spec.rfind("builtin:", 0) == 0) return SymmetricFunction::builtin(spec.substr(8), t);
  return SymmetricFunction::from_bits(spec);
}

int fcomp(const FcompArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  if (args.f.empty()) throw DomainError("--f is required");
  const SymmetricFunction f = load_function(args.f, args.t);
  const PivotView view = find_pivot_view(f);
  const unsigned t_prime = static_cast<unsigned>(f.arity() - view.pivot);
  Json line{{"view", to_string(view.view)},
            {"i", view.pivot},
            {"t_prime", t_prime},
            {"source_complemented", view.source_complemented},
            {"target_complemented", view.target_complemented},
            {"config",
             {{"subcommand", "fcomp"},
              {"f", f.to_bits()},
              {"t", f.arity()},
              {"n", args.n},
              {"language", args.language},
              {"seed", common.seed}}}};
  bool ok = true;
  if (args.audit) {
    const ToyLanguage language = load_language(args.language, args.n);
    const auto a = ideal_f_compression(language, f);
    const auto transform = transform_to_relaxed_or(a, f, make_pool(language, view));
    Thresholds th;
    th.big_delta = default_big_delta(transform.compression);
    th.small_delta = default_small_delta(transform.compression);
    if (th.small_delta >= th.big_delta) th.small_delta = th.big_delta / 2;
    const AuditReport report =
        audit_language(source_language(language, view), transform.compression, t_prime, th);
    line["audit_agreement"] = report.agreement();
    line["audit"] = to_json(report);
    ok = report.agreements == report.inputs;
  }
  Sink sink(common.out, out);
  sink.emit(line);
  if (!ok) {
    err << Json{{"status", "failed"}, {"reason", "audit disagreement"}}.dump() << '\n';
    return kFailed;
  }
  return kOk;
}

int report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << Json{{"status", "error"}, {"kind", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Desk-scale experiments on compressive maps, tournaments and reductions", "complab"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "64-bit seed");
    sub->add_option("--out", common.out, "Report path, '-' for standard output");
  };

  LemmaArgs lemma;
  auto* verify = app.add_subcommand("verify-lemma", "Check a sensitivity lemma on random compressive maps");
  verify->add_option("lemma", lemma.lemma, "pinsker | kl | vajda")->required();
  verify->add_option("--t", lemma.t, "Arity")->check(CLI::Range(1U, 24U));
  verify->add_option("--m", lemma.m, "Output bits")->check(CLI::Range(0U, 63U));
  verify->add_option("--r", lemma.r, "Randomness bits")->check(CLI::Range(0U, 24U));
  verify->add_option("--alphabet", lemma.alphabet, "Alphabet size (default 2, or 3 for vajda)");
  verify->add_option("--trials", lemma.trials, "Number of random maps");
  verify->add_option("--arith", lemma.arith, "exact | float");
  verify->add_option("--input", lemma.input, "Input distribution for kl: uniform | random");
  add_common(verify);

  TournamentArgs tour;
  auto* tsub = app.add_subcommand("tournament", "Build and check a greedy dominating set");
  tsub->add_option("--kind", tour.kind, "random | ideal-or");
  tsub->add_option("--t", tour.t, "Edge size")->check(CLI::Range(1U, 16U));
  tsub->add_option("--vertices", tour.vertices, "Vertex count (random)");
  tsub->add_option("--n", tour.n, "Input length (ideal-or)")->check(CLI::Range(1U, 16U));
  tsub->add_option("--language", tour.language, "Language (ideal-or)");
  tsub->add_option("--trials", tour.trials, "Number of tournaments");
  tsub->add_option("--exhaustive-limit", tour.exhaustive_limit, "Largest exhaustive step search");
  add_common(tsub);

  ReduceArgs red;
  auto* rsub = app.add_subcommand("reduce", "Build reduction advice and audit the decisions");
  rsub->add_option("--language", red.language, "builtin:NAME | random:SEED | code:K | file.json");
  rsub->add_option("--n", red.n, "Input length")->check(CLI::Range(0U, 24U));
  rsub->add_option("--compression", red.compression, "ideal-or | noisy-or:ES,EC | file.json");
  rsub->add_option("--coin-bits", red.coin_bits, "Coin bits of the noisy OR");
  rsub->add_option("--t", red.t, "Arity")->check(CLI::Range(1U, 64U));
  rsub->add_option("--delta", red.delta, "Lower threshold (default from the compression ratio)");
  rsub->add_option("--Delta", red.big_delta, "Upper threshold (default 1 - e_s - e_c)");
  rsub->add_option("--mode", red.mode, "base | tlogt");
  rsub->add_option("--alphabet", red.alphabet, "Block size for tlogt");
  rsub->add_flag("--audit", red.audit, "Decide every input and compare with membership");
  rsub->add_option("--exhaustive-limit", red.exhaustive_limit, "Largest exhaustive step search");
  add_common(rsub);

  FcompArgs fc;
  auto* fsub = app.add_subcommand("fcomp", "Transform an f-compression into a relaxed OR-compression");
  fsub->add_option("--f", fc.f, "Values f(0)..f(t) as bits, or builtin:or|and|majority|parity");
  fsub->add_option("--t", fc.t, "Arity for builtin functions")->check(CLI::Range(1U, 16U));
  fsub->add_option("--n", fc.n, "Input length")->check(CLI::Range(1U, 10U));
  fsub->add_option("--language", fc.language, "Language for the audit");
  fsub->add_flag("--audit", fc.audit, "Audit the transformed compression");
  add_common(fsub);

  std::vector<const char*> argv{"complab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << app.help();
    return report_error(err, "usage", e.what(), kUsage);
  }

  try {
    if (*verify) return verify_lemma(lemma, common, out, err);
    if (*tsub) return tournament(tour, common, out, err);
    if (*rsub) return reduce(red, common, out, err);
    return fcomp(fc, common, out, err);
  } catch (const BudgetExceeded& e) {
    return report_error(err, "budget", e.what(), kBudget);
  } catch (const DomainError& e) {
    return report_error(err, "domain", e.what(), kUsage);
  } catch (const InvariantViolation& e) {
    return report_error(err, "invariant", e.what(), kFailed);
  } catch (const Error& e) {
    return report_error(err, "error", e.what(), kFailed);
  }
}

}  // namespace complab::cli
