// wordlab: experiments on word maps with constants over symmetric groups.
//
// Every subcommand prints a single JSON report (stdout or --out) and some
// also write tabular CSV. Reports echo the full parameter set and the seed,
// and are byte-identical across reruns of the same build; wall-clock time is
// only embedded when --timing is given.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wordlab/anneal.hpp"
#include "wordlab/bounds.hpp"
#include "wordlab/eval.hpp"
#include "wordlab/sae.hpp"
#include "wordlab/transport.hpp"
#include "wordlab/word.hpp"

using nlohmann::json;
using namespace wordlab;

namespace {

constexpr const char* kVersion = "1.0.0";

int default_workers() {
  if (const char* env = std::getenv("WORDLAB_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(std::stoi(p));
  return out;
}

json rat_json(const Rat& r) {
  return json{{"num", r.num()}, {"den", r.den()}, {"decimal", r.to_double()}};
}

// Shared report skeleton: version + full spec echo + seed.
json report_base(const std::string& command, const json& spec) {
  return json{{"version", kVersion}, {"command", command}, {"spec", spec}};
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
  }
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open CSV file: " + path);
  f << header << "\n";
  for (const auto& row : rows) f << row << "\n";
}

// Measure spec grammar: uniform | ncycles | class:<cycles> | word:<text>.
Distribution parse_measure(const std::string& spec, int n, int r) {
  if (spec == "uniform") return uniform_exact(n);
  if (spec == "ncycles") return ncycle_uniform(n);
  if (spec.rfind("class:", 0) == 0)
    return class_uniform(Permutation::from_cycles(spec.substr(6), n));
  if (spec.rfind("word:", 0) == 0)
    return exact_distribution(reduce(parse_word(spec.substr(5), n, r)), n);
  throw std::invalid_argument(
      "measure spec must be uniform | ncycles | class:<cycles> | word:<text>, got: " + spec);
}

json dist_json(const Distribution& d, bool include_atoms) {
  json out{{"n", d.n},
           {"arity", d.arity},
           {"kind", d.kind == Distribution::kExact ? "exact" : "empirical"},
           {"denom", d.denom},
           {"support", d.support_size()}};
  if (include_atoms) {
    std::vector<std::string> keys;
    keys.reserve(d.atoms.size());
    for (const auto& [key, count] : d.atoms) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    json atoms = json::array();
    for (const auto& key : keys) {
      json atom{{"count", d.atoms.at(key)}};
      if (d.arity == 1) {
        atom["perm"] = Permutation::unpack(key).cycles_str();
      } else {
        json parts = json::array();
        for (const auto& p : unpack_tuple(key, d.n, d.arity)) parts.push_back(p.cycles_str());
        atom["tuple"] = parts;
      }
      atoms.push_back(atom);
    }
    out["atoms"] = atoms;
  }
  return out;
}

json plan_json(const TransportPlan& plan) {
  json flows = json::array();
  for (const auto& f : plan.flows)
    flows.push_back(json{{"i", f.i}, {"j", f.j}, {"mass", rat_json(f.mass)}});
  auto atom_names = [](const std::vector<std::string>& atoms) {
    json out = json::array();
    for (const auto& key : atoms) out.push_back(Permutation::unpack(key).cycles_str());
    return out;
  };
  return json{{"left_atoms", atom_names(plan.left_atoms)},
              {"right_atoms", atom_names(plan.right_atoms)},
              {"flows", flows},
              {"cost", rat_json(plan.cost)}};
}

json estimate_json(const McEstimate& e) {
  return json{{"hits", e.hits},     {"N", e.N},           {"estimate", e.estimate},
              {"sigma", e.sigma},   {"ci_low", e.ci_low}, {"ci_high", e.ci_high}};
}

std::vector<FreeWord> parse_free_words(const std::string& words_arg, int r) {
  std::vector<FreeWord> out;
  for (const auto& text : split(words_arg, ',')) {
    // Parse at a degree where nothing collapses, then demand no constants.
    Word w = parse_word(text, 3, r);
    FreeWord fw;
    for (const auto& letter : w.letters()) {
      if (is_const(letter)) {
        if (const_part(letter) == identity(3)) continue;
        throw std::invalid_argument("free-group subcommand got a constant in: " + text);
      }
      fw.push_back(var_part(letter).sign * var_part(letter).var);
    }
    out.push_back(free_reduce(fw));
  }
  return out;
}

struct Common {
  std::string out_path;
  bool timing = false;
  int workers = default_workers();
};

void finish(json& report, const Common& common,
            std::chrono::steady_clock::time_point start) {
  if (common.timing)
    report["wall_time_sec"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(report, common.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-map experiments on symmetric groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_help_flag("--help", "print usage");  // long-only; tail uses --h

  Common common;
  app.add_option("--out", common.out_path, "write the JSON report here instead of stdout");
  app.add_flag("--timing", common.timing, "embed wall-clock time (breaks byte-identity)");
  app.add_option("--workers", common.workers, "worker threads (default $WORDLAB_WORKERS or 1)")
      ->check(CLI::PositiveNumber);

  std::string word_text, words_arg, left_spec, right_spec, class_arg, target_arg = "random";
  std::string csv_path, n_list_arg, d_list_arg = "1,2", h_list_arg = "1,2", f_list_arg;
  int n = 0, r = 1, h = 1, d_max = 2, maxlen = 4;
  long long N = 100000, samples = 0;
  std::uint64_t seed = 0;
  bool symmetrize_flag = false, exact_flag = false, with_plan = false;
  AnnealConfig anneal_cfg;

  auto* classify_cmd = app.add_subcommand("classify", "reduce and classify a word");
  classify_cmd->add_option("--word", word_text)->required();
  classify_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  classify_cmd->add_option("--r", r)->check(CLI::PositiveNumber);

  auto* exact_cmd = app.add_subcommand("exact-dist", "exact word-value distribution");
  exact_cmd->add_option("--word", word_text)->required();
  exact_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  exact_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  exact_cmd->add_flag("--symmetrize", symmetrize_flag, "conjugation-average the result");
  exact_cmd->add_option("--csv", csv_path, "also write atoms as CSV");

  auto* sample_cmd = app.add_subcommand("sample-dist", "sampled word-value distribution");
  sample_cmd->add_option("--word", word_text)->required();
  sample_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--N", N)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--csv", csv_path, "also write atoms as CSV");

  auto* kr_cmd = app.add_subcommand("kr", "exact transport distance between two measures");
  kr_cmd->add_option("--left", left_spec)->required();
  kr_cmd->add_option("--right", right_spec)->required();
  kr_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  kr_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  kr_cmd->add_flag("--plan", with_plan, "include the optimal coupling");

  auto* coupling_cmd =
      app.add_subcommand("ncycle-coupling", "explicit class-to-n-cycles coupling");
  coupling_cmd->add_option("--class", class_arg, "cycle notation of a class representative")
      ->required();
  coupling_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  coupling_cmd->add_option("--samples", samples, "sampled construction size (required for n > 8)");
  coupling_cmd->add_option("--seed", seed);

  auto* bound_cmd = app.add_subcommand("bound-check", "audit the subset probability bound");
  bound_cmd->add_option("--words", words_arg, "comma-separated word texts")->required();
  bound_cmd->add_option("--n-list", n_list_arg)->required();
  bound_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  bound_cmd->add_option("--h-list", h_list_arg);
  bound_cmd->add_option("--d-max", d_max)->check(CLI::PositiveNumber);
  bound_cmd->add_option("--N", N)->check(CLI::PositiveNumber);
  bound_cmd->add_option("--seed", seed);
  bound_cmd->add_option("--csv", csv_path, "also write one CSV row per audit");

  auto* tail_cmd = app.add_subcommand("tail", "tail probabilities of short-cycle mass");
  tail_cmd->add_option("--word", word_text)->required();
  tail_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  tail_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  tail_cmd->add_option("--h", h)->check(CLI::PositiveNumber);
  tail_cmd->add_option("--f-list", f_list_arg, "thresholds, e.g. 5,10,15,20")->required();
  tail_cmd->add_option("--N", N)->check(CLI::PositiveNumber);
  tail_cmd->add_option("--seed", seed);

  auto* anneal_cmd = app.add_subcommand("anneal", "approximate word equation solving");
  anneal_cmd->add_option("--word", word_text)->required();
  anneal_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--target", target_arg, "cycle notation, or 'random'");
  anneal_cmd->add_option("--seed", seed);
  anneal_cmd->add_option("--steps", anneal_cfg.steps)->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--restarts", anneal_cfg.restarts)->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--temp", anneal_cfg.initial_temperature,
                         "initial temperature; negative selects auto calibration");
  anneal_cmd->add_option("--cooling", anneal_cfg.cooling);
  anneal_cmd->add_option("--trace-csv", csv_path, "write per-restart improvement curves");

  auto* sae_cmd = app.add_subcommand("sae", "distance of a word tuple's law to product uniform");
  sae_cmd->add_option("--words", words_arg, "comma-separated word texts")->required();
  sae_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sae_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  sae_cmd->add_flag("--exact", exact_flag, "exact enumeration + exact transport");
  sae_cmd->add_option("--N", N)->check(CLI::PositiveNumber);
  sae_cmd->add_option("--seed", seed);

  auto* sofic_cmd = app.add_subcommand("sofic", "fixed-point fractions of a test battery");
  sofic_cmd->add_option("--words", words_arg, "comma-separated word texts")->required();
  sofic_cmd->add_option("--r", r)->check(CLI::PositiveNumber);
  sofic_cmd->add_option("--degrees", n_list_arg, "comma-separated degrees")->required();
  sofic_cmd->add_option("--N", N)->check(CLI::PositiveNumber);
  sofic_cmd->add_option("--seed", seed);
  sofic_cmd->add_option("--maxlen", maxlen, "battery word length cap")
      ->check(CLI::PositiveNumber);
  sofic_cmd->add_option("--csv", csv_path, "also write one CSV row per (word, degree)");

  auto* fold_cmd = app.add_subcommand("fold", "subgroup rank via graph folding");
  fold_cmd->add_option("--words", words_arg, "comma-separated constant-free words")->required();
  fold_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);

  // Let --out/--timing/--workers appear after the subcommand name.
  for (CLI::App* sub :
       {classify_cmd, exact_cmd, sample_cmd, kr_cmd, coupling_cmd, bound_cmd, tail_cmd,
        anneal_cmd, sae_cmd, sofic_cmd, fold_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  auto start = std::chrono::steady_clock::now();
  try {
    if (*classify_cmd) {
      Word w = reduce(parse_word(word_text, n, r));
      Classification c = classify(w);
      json spec{{"word", word_text}, {"n", n}, {"r", r}, {"seed", 0}};
      json report = report_base("classify", spec);
      report["result"] = json{{"reduced", w.str()},
                              {"length", c.length},
                              {"J0", c.J0},
                              {"Jplus", c.Jplus},
                              {"Jminus", c.Jminus},
                              {"strong", c.strong},
                              {"non_singular", c.non_singular},
                              {"regular", c.regular},
                              {"crit_norm", c.crit_norm}};
      json crits = json::array();
      for (const auto& p : c.critical_constants) crits.push_back(p.cycles_str());
      report["result"]["critical_constants"] = crits;
      finish(report, common, start);
    } else if (*exact_cmd) {
      Word w = reduce(parse_word(word_text, n, r));
      Distribution dist = exact_distribution(w, n);
      if (symmetrize_flag) dist = symmetrize(dist);
      json spec{{"word", word_text},
                {"n", n},
                {"r", r},
                {"symmetrize", symmetrize_flag},
                {"seed", 0}};
      json report = report_base("exact-dist", spec);
      report["result"] = dist_json(dist, true);
      if (!csv_path.empty()) {
        std::vector<std::string> rows;
        for (const auto& atom : report["result"]["atoms"])
          rows.push_back(atom["perm"].get<std::string>() + "," +
                         std::to_string(atom["count"].get<long long>()) + "," +
                         std::to_string(dist.denom));
        write_csv(csv_path, "perm,count,denom", rows);
      }
      finish(report, common, start);
    } else if (*sample_cmd) {
      Word w = reduce(parse_word(word_text, n, r));
      Distribution dist = sample_distribution(w, n, N, seed, common.workers);
      json spec{{"word", word_text}, {"n", n},       {"r", r},
                {"N", N},            {"seed", seed}, {"workers", common.workers}};
      json report = report_base("sample-dist", spec);
      report["result"] = dist_json(dist, true);
      if (!csv_path.empty()) {
        std::vector<std::string> rows;
        for (const auto& atom : report["result"]["atoms"])
          rows.push_back(atom["perm"].get<std::string>() + "," +
                         std::to_string(atom["count"].get<long long>()) + "," +
                         std::to_string(dist.denom));
        write_csv(csv_path, "perm,count,denom", rows);
      }
      finish(report, common, start);
    } else if (*kr_cmd) {
      Distribution left = parse_measure(left_spec, n, r);
      Distribution right = parse_measure(right_spec, n, r);
      auto [value, plan] = kr_exact(left, right);
      json spec{{"left", left_spec}, {"right", right_spec}, {"n", n}, {"r", r}, {"seed", 0}};
      json report = report_base("kr", spec);
      report["result"] = json{{"value", rat_json(value)},
                              {"left_support", left.support_size()},
                              {"right_support", right.support_size()}};
      if (with_plan) report["result"]["plan"] = plan_json(plan);
      finish(report, common, start);
    } else if (*coupling_cmd) {
      Permutation rep = Permutation::from_cycles(class_arg, n);
      TransportPlan plan = coupling_class_to_ncycles(rep, samples, seed);
      json spec{{"class", class_arg}, {"n", n}, {"samples", samples}, {"seed", seed}};
      json report = report_base("ncycle-coupling", spec);
      report["result"] = plan_json(plan);
      report["result"]["num_cycles"] =
          static_cast<int>(cycle_stats(rep).cycle_lengths.size());
      if (samples == 0)
        report["result"]["checked_cost"] =
            rat_json(plan_cost_checked(plan, class_uniform(rep), ncycle_uniform(n)));
      finish(report, common, start);
    } else if (*bound_cmd) {
      json spec{{"words", words_arg}, {"n_list", n_list_arg}, {"r", r},
                {"h_list", h_list_arg}, {"d_max", d_max},     {"N", N},
                {"seed", seed},         {"workers", common.workers}};
      json report = report_base("bound-check", spec);
      json rows = json::array();
      std::vector<std::string> csv_rows;
      for (const auto& text : split(words_arg, ',')) {
        for (int deg : split_ints(n_list_arg)) {
          Word w = reduce(parse_word(text, deg, r));
          for (int hh : split_ints(h_list_arg)) {
            for (const auto& row : bound_audit(w, deg, hh, d_max, N, seed, common.workers)) {
              json j{{"word", text},           {"n", deg},
                     {"d", row.d},             {"h", row.h},
                     {"subset_id", row.subset_id}, {"X", row.X},
                     {"estimate", estimate_json(row.est)},
                     {"bound", row.bound},     {"pass", row.pass}};
              rows.push_back(j);
              std::ostringstream line;
              line << text << "," << deg << "," << row.d << "," << row.h << ","
                   << row.subset_id << "," << row.est.estimate << "," << row.est.ci_low << ","
                   << row.est.ci_high << "," << row.bound << ","
                   << (row.pass ? "pass" : "FAIL");
              csv_rows.push_back(line.str());
            }
          }
        }
      }
      report["result"] = json{{"rows", rows}};
      if (!csv_path.empty())
        write_csv(csv_path, "word,n,d,h,subset,estimate,ci_low,ci_high,bound,verdict",
                  csv_rows);
      finish(report, common, start);
    } else if (*tail_cmd) {
      Word w = reduce(parse_word(word_text, n, r));
      json spec{{"word", word_text}, {"n", n},       {"r", r},
                {"h", h},            {"f_list", f_list_arg},
                {"N", N},            {"seed", seed}, {"workers", common.workers}};
      json report = report_base("tail", spec);
      json rows = json::array();
      std::vector<double> fs, logs;
      for (int f : split_ints(f_list_arg)) {
        McEstimate e = mc_tail_prob(w, n, h, f, N, seed, common.workers);
        rows.push_back(json{{"f", f}, {"estimate", estimate_json(e)}});
        if (e.estimate > 0) {
          fs.push_back(f);
          logs.push_back(std::log(e.estimate));
        }
      }
      report["result"] = json{{"rows", rows}};
      if (fs.size() >= 2) {
        // least-squares slope of log P against f
        double mx = 0, my = 0;
        for (size_t i = 0; i < fs.size(); ++i) mx += fs[i], my += logs[i];
        mx /= fs.size(), my /= fs.size();
        double sxy = 0, sxx = 0;
        for (size_t i = 0; i < fs.size(); ++i) {
          sxy += (fs[i] - mx) * (logs[i] - my);
          sxx += (fs[i] - mx) * (fs[i] - mx);
        }
        report["result"]["log_slope"] = sxy / sxx;
      }
      finish(report, common, start);
    } else if (*anneal_cmd) {
      Word w = reduce(parse_word(word_text, n, r));
      Permutation target = target_arg == "random"
                               ? [&] {
                                   Rng rng(Rng::derive(seed, 1, 0));
                                   return random_uniform(n, rng);
                                 }()
                               : Permutation::from_cycles(target_arg, n);
      anneal_cfg.seed = seed;
      anneal_cfg.workers = common.workers;
      AnnealResult res = solve(w, n, target, anneal_cfg);
      json spec{{"word", word_text},       {"n", n},
                {"r", r},                  {"target", target_arg},
                {"seed", seed},            {"steps", anneal_cfg.steps},
                {"restarts", anneal_cfg.restarts},
                {"temp", anneal_cfg.initial_temperature},
                {"cooling", anneal_cfg.cooling},
                {"workers", common.workers}};
      json report = report_base("anneal", spec);
      json assignment = json::array();
      for (const auto& p : res.best_assignment) assignment.push_back(p.cycles_str());
      report["result"] = json{{"target", target.cycles_str()},
                              {"best_raw_distance", res.best_raw_distance},
                              {"best_distance", rat_json(Rat(res.best_raw_distance, n))},
                              {"initial_raw_distance", res.initial_raw_distance},
                              {"best_assignment", assignment},
                              {"early_uphill_accept_rate", res.early_uphill_accept_rate}};
      if (!csv_path.empty()) {
        std::vector<std::string> rows;
        for (size_t restart = 0; restart < res.traces.size(); ++restart)
          for (const auto& [step, value] : res.traces[restart])
            rows.push_back(std::to_string(restart) + "," + std::to_string(step) + "," +
                           std::to_string(value));
        write_csv(csv_path, "restart,step,raw_distance", rows);
      }
      finish(report, common, start);
    } else if (*sae_cmd) {
      std::vector<Word> words;
      for (const auto& text : split(words_arg, ','))
        words.push_back(reduce(parse_word(text, n, r)));
      SaeResult res = sae_estimate(words, n, exact_flag, N, seed, common.workers);
      json spec{{"words", words_arg}, {"n", n},       {"r", r},  {"exact", exact_flag},
                {"N", N},             {"seed", seed}, {"workers", common.workers}};
      json report = report_base("sae", spec);
      if (res.exact) {
        report["result"] = json{{"mode", "exact"}, {"kr", rat_json(res.kr_value)}};
      } else {
        report["result"] = json{{"mode", "sampled"},
                                {"kr_sampled", res.kr_sampled},
                                {"baseline", res.baseline}};
      }
      finish(report, common, start);
    } else if (*sofic_cmd) {
      json spec{{"words", words_arg}, {"r", r},       {"degrees", n_list_arg},
                {"N", N},             {"seed", seed}, {"maxlen", maxlen},
                {"workers", common.workers}};
      json report = report_base("sofic", spec);
      auto battery = sofic_battery(static_cast<int>(split(words_arg, ',').size()), maxlen);
      auto rows = sofic_check(split(words_arg, ','), r, split_ints(n_list_arg), N, seed,
                              battery, common.workers);
      json jrows = json::array();
      std::vector<std::string> csv_rows;
      for (const auto& row : rows) {
        jrows.push_back(json{{"v", free_word_str(row.v)},
                             {"n", row.n},
                             {"mean_fixed_fraction", row.mean_fixed_fraction}});
        std::ostringstream line;
        line << free_word_str(row.v) << "," << row.n << "," << row.mean_fixed_fraction;
        csv_rows.push_back(line.str());
      }
      report["result"] = json{{"rows", jrows}};
      if (!csv_path.empty()) write_csv(csv_path, "v,n,mean_fixed_fraction", csv_rows);
      finish(report, common, start);
    } else if (*fold_cmd) {
      std::vector<FreeWord> words = parse_free_words(words_arg, r);
      FreenessReport rep = freeness_report(words, r);
      json spec{{"words", words_arg}, {"r", r}, {"seed", 0}};
      json report = report_base("fold", spec);
      json jwords = json::array();
      for (const auto& fw : words) jwords.push_back(free_word_str(fw));
      report["result"] = json{{"words", jwords},
                              {"rank", rep.rank},
                              {"free_of_rank_d", rep.free_of_rank_d},
                              {"rank_excess_obstruction", rep.rank_excess_obstruction},
                              {"exemplar_obstruction", rep.exemplar_obstruction}};
      finish(report, common, start);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
