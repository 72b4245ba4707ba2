// persist — command-line front end for the persistence toolkit.
//
// Subcommands: simulate, exact, formula, sweep, verify. Records are emitted
// as json-lines by default, or as CSV with --format csv. Exact rationals are
// rendered "num/den" throughout.
//
// Exit codes: 0 success, 1 usage error, 2 enumeration guard violation,
// 3 verification failure.

#include <persistence/persistence.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;
constexpr int kExitVerifyFailed = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_status(persist_status status) {
  const int code = status == PERSIST_ERR_GUARD ? kExitGuard : kExitUsage;
  throw CliError{code, persist_last_error()};
}

void check(persist_status status) {
  if (status != PERSIST_OK) fail_status(status);
}

std::string take_string(char* s) {
  std::string out = s != nullptr ? s : "";
  persist_string_free(s);
  return out;
}

// RAII wrappers over the C handles.
using StreamPtr = std::unique_ptr<persist_stream, decltype(&persist_stream_free)>;
using PolicyPtr = std::unique_ptr<persist_policy, decltype(&persist_policy_free)>;
using ModelPtr = std::unique_ptr<persist_model, decltype(&persist_model_free)>;
using TracePtr = std::unique_ptr<persist_trace, decltype(&persist_trace_free)>;

StreamPtr load_stream(const std::string& path) {
  persist_stream* raw = nullptr;
  check(persist_stream_from_file(path.c_str(), &raw));
  return StreamPtr(raw, &persist_stream_free);
}

struct OutputWriter {
  std::string format = "json";
  std::string path;
  std::ofstream file;
  bool csv_header_written = false;

  std::ostream& sink() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw CliError{kExitUsage, "cannot open output file: " + path};
    }
    return file;
  }

  void write(const ordered_json& record) {
    std::ostream& out = sink();
    if (format == "csv") {
      if (!csv_header_written) {
        bool first = true;
        for (const auto& [key, value] : record.items()) {
          out << (first ? "" : ",") << key;
          first = false;
        }
        out << "\n";
        csv_header_written = true;
      }
      bool first = true;
      for (const auto& [key, value] : record.items()) {
        out << (first ? "" : ",");
        if (value.is_string()) {
          out << value.get<std::string>();
        } else {
          out << value.dump();
        }
        first = false;
      }
      out << "\n";
    } else {
      out << record.dump() << "\n";
    }
  }
};

struct ExperimentOptions {
  std::string model;  // "file", "permutation", "iid"
  std::string values_path;
  std::string probs_path;
  std::string policy = "naive";  // naive | threshold | rank | median | offline
  std::string threshold;
  std::uint64_t rank = 1;
  std::uint64_t n = 0;  // iid stream length
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::string horizon;  // "n", "n+1" or empty for the model default
  unsigned workers = 1;
};

void add_experiment_flags(CLI::App* cmd, ExperimentOptions& opt, bool with_trials) {
  cmd->add_option("--model", opt.model, "stream model: file, permutation or iid")->required();
  cmd->add_option("--values", opt.values_path, "value file, one rational per line")->required();
  cmd->add_option("--probs", opt.probs_path, "probability file (iid model)");
  cmd->add_option("--policy", opt.policy, "naive, threshold, rank, median or offline");
  cmd->add_option("--threshold", opt.threshold, "threshold value (policy=threshold)");
  cmd->add_option("--rank", opt.rank, "k for the k-th largest threshold (policy=rank)");
  cmd->add_option("--n", opt.n, "stream length for the iid model");
  if (with_trials) {
    cmd->add_option("--trials", opt.trials, "Monte Carlo trials (sampled models)");
    cmd->add_option("--seed", opt.seed, "base seed; required when trials > 0");
    cmd->add_option("--workers", opt.workers, "worker threads for trials");
  }
  cmd->add_option("--horizon", opt.horizon, "steps per run: n or n+1")
      ->check(CLI::IsMember({"n", "n+1"}));
}

persist_horizon resolve_horizon(const ExperimentOptions& opt) {
  if (opt.horizon == "n") return PERSIST_HORIZON_N;
  if (opt.horizon == "n+1") return PERSIST_HORIZON_N_PLUS_ONE;
  // default: per-step accounting for iid, per-item for everything else
  return opt.model == "iid" ? PERSIST_HORIZON_N : PERSIST_HORIZON_N_PLUS_ONE;
}

std::string horizon_name(persist_horizon h) {
  return h == PERSIST_HORIZON_N ? "n" : "n+1";
}

PolicyPtr build_policy(const ExperimentOptions& opt, const persist_stream* values) {
  persist_policy* raw = nullptr;
  if (opt.policy == "naive") {
    check(persist_policy_naive(&raw));
  } else if (opt.policy == "threshold") {
    if (opt.threshold.empty())
      throw CliError{kExitUsage, "--threshold is required with policy=threshold"};
    check(persist_policy_threshold(opt.threshold.c_str(), &raw));
  } else if (opt.policy == "rank") {
    check(persist_policy_rank(values, opt.rank, &raw));
  } else if (opt.policy == "median") {
    check(persist_policy_median(values, &raw));
  } else {
    throw CliError{kExitUsage, "unknown policy: " + opt.policy};
  }
  return PolicyPtr(raw, &persist_policy_free);
}

ModelPtr build_model(const ExperimentOptions& opt, const persist_stream* values) {
  persist_model* raw = nullptr;
  if (opt.model == "permutation") {
    check(persist_model_permutation(values, &raw));
  } else if (opt.model == "iid") {
    if (opt.probs_path.empty()) throw CliError{kExitUsage, "--probs is required with model=iid"};
    if (opt.n == 0) throw CliError{kExitUsage, "--n is required with model=iid"};
    StreamPtr probs = load_stream(opt.probs_path);
    check(persist_model_iid(values, probs.get(), opt.n, &raw));
  } else {
    throw CliError{kExitUsage, "unknown model: " + opt.model};
  }
  return ModelPtr(raw, &persist_model_free);
}

void attach_forecast(ordered_json& record, const persist_model* model,
                     const persist_policy* policy) {
  char* json = nullptr;
  if (persist_forecast_json(model, policy, &json) != PERSIST_OK) return;  // no matching forecast
  const ordered_json forecast = ordered_json::parse(take_string(json));
  for (const auto& [key, value] : forecast.items()) record["forecast_" + key] = value;
}

int cmd_simulate(const ExperimentOptions& opt, OutputWriter& out) {
  StreamPtr values = load_stream(opt.values_path);
  const persist_horizon horizon = resolve_horizon(opt);

  ordered_json record;
  record["command"] = "simulate";
  record["model"] = opt.model;
  record["policy"] = opt.policy;
  record["horizon"] = horizon_name(horizon);

  if (opt.model == "file") {
    if (opt.trials > 0)
      throw CliError{kExitUsage, "--trials applies to sampled models, not explicit streams"};
    uint64_t length = 0;
    check(persist_stream_length(values.get(), &length));
    const std::uint64_t divisor = horizon == PERSIST_HORIZON_N ? length : length + 1;
    record["n"] = length;
    record["divisor"] = divisor;
    if (opt.policy == "offline") {
      char* total = nullptr;
      char* relative = nullptr;
      check(persist_offline_payoff(values.get(), horizon, &total, &relative));
      record["total"] = take_string(total);
      record["relative"] = take_string(relative);
    } else {
      PolicyPtr policy = build_policy(opt, values.get());
      persist_trace* raw = nullptr;
      check(persist_simulate(values.get(), policy.get(), horizon, &raw));
      TracePtr trace(raw, &persist_trace_free);
      char* total = nullptr;
      char* relative = nullptr;
      check(persist_trace_total(trace.get(), &total));
      check(persist_trace_relative(trace.get(), &relative));
      record["total"] = take_string(total);
      record["relative"] = take_string(relative);
    }
    out.write(record);
    return kExitOk;
  }

  // sampled models run Monte Carlo
  if (opt.trials == 0) throw CliError{kExitUsage, "--trials is required for sampled models"};
  if (!opt.seed.has_value()) throw CliError{kExitUsage, "--seed is required when trials > 0"};
  ModelPtr model = build_model(opt, values.get());
  PolicyPtr policy(nullptr, &persist_policy_free);
  if (opt.policy != "offline") policy = build_policy(opt, values.get());

  char* mean = nullptr;
  double mean_value = 0.0;
  double std_error = 0.0;
  check(persist_monte_carlo(model.get(), policy.get(), horizon, opt.trials, *opt.seed, 0,
                            opt.workers, &mean, &mean_value, &std_error));
  char* rel_mean = nullptr;
  double rel_value = 0.0;
  double rel_error = 0.0;
  check(persist_monte_carlo(model.get(), policy.get(), horizon, opt.trials, *opt.seed, 1,
                            opt.workers, &rel_mean, &rel_value, &rel_error));

  record["trials"] = opt.trials;
  record["seed"] = *opt.seed;
  record["mean"] = take_string(mean);
  record["mean_value"] = mean_value;
  record["std_error"] = std_error;
  record["relative_mean"] = take_string(rel_mean);
  record["relative_mean_value"] = rel_value;
  record["relative_std_error"] = rel_error;
  attach_forecast(record, model.get(), policy.get());
  out.write(record);
  return kExitOk;
}

int cmd_exact(const ExperimentOptions& opt, OutputWriter& out) {
  if (opt.model == "file")
    throw CliError{kExitUsage, "exact enumeration needs model=permutation or model=iid"};
  StreamPtr values = load_stream(opt.values_path);
  const persist_horizon horizon = resolve_horizon(opt);
  ModelPtr model = build_model(opt, values.get());
  PolicyPtr policy(nullptr, &persist_policy_free);
  if (opt.policy != "offline") policy = build_policy(opt, values.get());

  char* mean = nullptr;
  char* relative = nullptr;
  uint64_t outcomes = 0;
  check(persist_enumerate(model.get(), policy.get(), horizon, &mean, &relative, &outcomes));

  ordered_json record;
  record["command"] = "exact";
  record["model"] = opt.model;
  record["policy"] = opt.policy;
  record["horizon"] = horizon_name(horizon);
  record["outcomes"] = outcomes;
  record["mean"] = take_string(mean);
  record["relative"] = take_string(relative);
  attach_forecast(record, model.get(), policy.get());
  out.write(record);
  return kExitOk;
}

struct FormulaOptions {
  std::string which;
  std::uint64_t t = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t i = 0;
  std::uint64_t r = 0;
  std::string c;
  std::string p;
  std::string total_weight;
  std::string top_weight;
  std::string values_path;
  std::string probs_path;
  std::string horizon = "n+1";
};

int cmd_formula(const FormulaOptions& opt, OutputWriter& out) {
  ordered_json record;
  record["command"] = "formula";
  record["which"] = opt.which;

  auto one_string = [&](persist_status status, char* value) {
    check(status);
    record["value"] = take_string(value);
  };

  auto need = [&](bool ok, const char* message) {
    if (!ok) throw CliError{kExitUsage, message};
  };

  if (opt.which == "f") {
    need(opt.t > 0 && opt.n > 0 && opt.k > 0, "f needs --t, --n and --k");
    char* value = nullptr;
    one_string(persist_f_tnk(opt.t, opt.n, opt.k, &value), value);
  } else if (opt.which == "identity-a" || opt.which == "identity-b") {
    need(opt.n > 0 && opt.k > 0, "identities need --n and --k");
    char* lhs = nullptr;
    char* rhs = nullptr;
    check(opt.which == "identity-a" ? persist_identity_sum_f_a(opt.n, opt.k, &lhs, &rhs)
                                    : persist_identity_sum_f_b(opt.n, opt.k, &lhs, &rhs));
    record["lhs"] = take_string(lhs);
    record["rhs"] = take_string(rhs);
    record["equal"] = record["lhs"] == record["rhs"];
  } else if (opt.which == "asymptotic-coefficient") {
    need(opt.n > 0 && opt.k > 0, "the coefficient needs --n and --k");
    char* value = nullptr;
    one_string(persist_asymptotic_coefficient(opt.n, opt.k, &value), value);
  } else if (opt.which == "rho") {
    need(!opt.c.empty(), "rho needs --c");
    char* value = nullptr;
    one_string(persist_rho(opt.c.c_str(), &value), value);
  } else if (opt.which == "bound-perm") {
    need(!opt.c.empty() && !opt.total_weight.empty() && !opt.top_weight.empty(),
         "bound-perm needs --total-weight, --top-weight and --c");
    char* value = nullptr;
    one_string(persist_competitive_bound_perm(opt.total_weight.c_str(), opt.top_weight.c_str(),
                                              opt.c.c_str(), &value),
               value);
  } else if (opt.which == "q-recurrence" || opt.which == "q-closed" || opt.which == "q-printed") {
    need(!opt.p.empty(), "q forms need --p");
    char* value = nullptr;
    persist_status status;
    if (opt.which == "q-recurrence") {
      status = persist_q_recurrence(opt.i, opt.p.c_str(), &value);
    } else if (opt.which == "q-closed") {
      status = persist_q_closed_form(opt.i, opt.p.c_str(), &value);
    } else {
      status = persist_q_printed_form(opt.i, opt.p.c_str(), &value);
    }
    one_string(status, value);
  } else if (opt.which == "perm-opt-relative" || opt.which == "perm-opt-total" ||
             opt.which == "perm-threshold-total" || opt.which == "median-threshold" ||
             opt.which == "rank-threshold" || opt.which == "density") {
    need(!opt.values_path.empty(), "this formula needs --values");
    StreamPtr values = load_stream(opt.values_path);
    if (opt.which == "perm-opt-relative") {
      char* value = nullptr;
      one_string(persist_perm_opt_relative(values.get(), &value), value);
    } else if (opt.which == "perm-opt-total") {
      const persist_horizon horizon =
          opt.horizon == "n" ? PERSIST_HORIZON_N : PERSIST_HORIZON_N_PLUS_ONE;
      record["horizon"] = horizon_name(horizon);
      char* value = nullptr;
      one_string(persist_perm_opt_total(values.get(), horizon, &value), value);
    } else if (opt.which == "perm-threshold-total") {
      need(opt.k > 0, "perm-threshold-total needs --k");
      record["k"] = opt.k;
      char* value = nullptr;
      one_string(persist_perm_threshold_total(values.get(), opt.k, &value), value);
    } else if (opt.which == "median-threshold") {
      char* value = nullptr;
      one_string(persist_median_threshold(values.get(), &value), value);
    } else if (opt.which == "rank-threshold") {
      need(opt.k > 0, "rank-threshold needs --k");
      char* value = nullptr;
      one_string(persist_rank_threshold(values.get(), opt.k, &value), value);
    } else {
      char* c = nullptr;
      char* lhs = nullptr;
      char* rhs = nullptr;
      char* residual = nullptr;
      uint64_t top_count = 0;
      check(persist_measure_density(values.get(), &c, &top_count, &lhs, &rhs, &residual));
      record["c"] = take_string(c);
      record["top_count"] = top_count;
      record["lhs"] = take_string(lhs);
      record["rhs"] = take_string(rhs);
      record["residual"] = take_string(residual);
    }
  } else if (opt.which == "iid-opt-relative" || opt.which == "iid-threshold-relative" ||
             opt.which == "iid-threshold-total") {
    need(!opt.values_path.empty() && !opt.probs_path.empty(),
         "iid formulas need --values and --probs");
    StreamPtr values = load_stream(opt.values_path);
    StreamPtr probs = load_stream(opt.probs_path);
    if (opt.which == "iid-opt-relative") {
      char* value = nullptr;
      one_string(persist_iid_opt_relative(values.get(), probs.get(), &value), value);
    } else if (opt.which == "iid-threshold-relative") {
      record["r"] = opt.r;
      char* value = nullptr;
      one_string(persist_iid_threshold_relative(values.get(), probs.get(), opt.r, &value), value);
    } else {
      need(opt.n > 0, "iid-threshold-total needs --n");
      record["r"] = opt.r;
      record["n"] = opt.n;
      char* value = nullptr;
      one_string(persist_iid_threshold_total(values.get(), probs.get(), opt.r, opt.n, &value),
                 value);
    }
  } else if (opt.which == "synth-c-dense") {
    need(!opt.c.empty() && opt.t > 0, "synth-c-dense needs --c and --t");
    persist_stream* raw = nullptr;
    check(persist_synth_c_dense(opt.c.c_str(), opt.t, &raw));
    StreamPtr values(raw, &persist_stream_free);
    uint64_t length = 0;
    check(persist_stream_length(values.get(), &length));
    ordered_json list = ordered_json::array();
    for (uint64_t i = 0; i < length; ++i) {
      char* v = nullptr;
      check(persist_stream_value(values.get(), i, &v));
      list.push_back(take_string(v));
    }
    record["values"] = std::move(list);
  } else {
    throw CliError{kExitUsage, "unknown formula: " + opt.which};
  }

  out.write(record);
  return kExitOk;
}

struct SweepOptions {
  std::string family = "cdense";
  std::vector<std::string> c_grid;
  std::uint64_t t = 1000;
  std::string lo = "1";
  std::string hi = "1000";
  std::vector<std::uint64_t> sizes;
};

int cmd_sweep(const SweepOptions& opt, OutputWriter& out) {
  if (opt.family == "cdense") {
    std::vector<std::string> grid = opt.c_grid;
    if (grid.empty()) {
      for (int j = 1; j <= 10; ++j) grid.push_back(std::to_string(j) + "/20");
    }
    for (const std::string& c : grid) {
      char* row = nullptr;
      check(persist_sweep_cdense_row(c.c_str(), opt.t, &row));
      out.write(ordered_json::parse(take_string(row)));
    }
    return kExitOk;
  }
  if (opt.family == "adversarial") {
    std::vector<std::uint64_t> sizes = opt.sizes;
    if (sizes.empty()) sizes = {100, 1000, 10000};
    for (std::uint64_t n : sizes) {
      char* row = nullptr;
      check(persist_sweep_adversarial_row(opt.lo.c_str(), opt.hi.c_str(), n, &row));
      out.write(ordered_json::parse(take_string(row)));
    }
    return kExitOk;
  }
  throw CliError{kExitUsage, "unknown sweep family: " + opt.family};
}

int cmd_verify() {
  char* report_json = nullptr;
  int all_passed = 0;
  check(persist_verify_run(&report_json, &all_passed));
  const ordered_json report = ordered_json::parse(take_string(report_json));
  for (const auto& item : report) {
    const bool passed = item.at("passed").get<bool>();
    std::cout << (passed ? "PASS" : "FAIL") << "  " << item.at("name").get<std::string>() << " — "
              << item.at("summary").get<std::string>();
    if (!passed) std::cout << " [" << item.at("detail").get<std::string>() << "]";
    std::cout << "\n";
  }
  std::cout << (all_passed ? "all checks passed" : "CHECKS FAILED") << "\n";
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"persistence toolkit: two-slot stream-buffer observation experiments"};
  app.require_subcommand(1);

  ExperimentOptions sim_opt;
  ExperimentOptions exact_opt;
  FormulaOptions formula_opt;
  SweepOptions sweep_opt;
  OutputWriter writer;

  app.add_option("--format", writer.format, "output format: json (lines) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", writer.path, "write records to a file instead of stdout");

  CLI::App* sim = app.add_subcommand("simulate", "run a policy on a stream or sampled model");
  add_experiment_flags(sim, sim_opt, true);

  CLI::App* exact = app.add_subcommand("exact", "exhaustive expectation over a sampled model");
  add_experiment_flags(exact, exact_opt, false);

  CLI::App* formula = app.add_subcommand("formula", "evaluate one closed form");
  formula->add_option("--which", formula_opt.which, "formula name")->required();
  formula->add_option("--t", formula_opt.t, "position / set size parameter");
  formula->add_option("--n", formula_opt.n, "stream length parameter");
  formula->add_option("--k", formula_opt.k, "threshold count parameter");
  formula->add_option("--i", formula_opt.i, "recurrence index");
  formula->add_option("--r", formula_opt.r, "iid threshold index");
  formula->add_option("--c", formula_opt.c, "density parameter");
  formula->add_option("--p", formula_opt.p, "follow probability");
  formula->add_option("--total-weight", formula_opt.total_weight, "sum of all values");
  formula->add_option("--top-weight", formula_opt.top_weight, "sum of the top values");
  formula->add_option("--values", formula_opt.values_path, "value file");
  formula->add_option("--probs", formula_opt.probs_path, "probability file");
  formula->add_option("--horizon", formula_opt.horizon, "n or n+1")
      ->check(CLI::IsMember({"n", "n+1"}));

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate ratios over a density grid or sizes");
  sweep->add_option("--family", sweep_opt.family, "cdense or adversarial");
  sweep->add_option("--c-grid", sweep_opt.c_grid, "density grid values");
  sweep->add_option("--t", sweep_opt.t, "synthesized set size");
  sweep->add_option("--lo", sweep_opt.lo, "low value of the alternating stream");
  sweep->add_option("--hi", sweep_opt.hi, "high value of the alternating stream");
  sweep->add_option("--sizes", sweep_opt.sizes, "alternating stream lengths");

  CLI::App* verify = app.add_subcommand("verify", "run the cross-validation suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_opt, writer);
    if (exact->parsed()) return cmd_exact(exact_opt, writer);
    if (formula->parsed()) return cmd_formula(formula_opt, writer);
    if (sweep->parsed()) return cmd_sweep(sweep_opt, writer);
    if (verify->parsed()) return cmd_verify();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
