#include "persistence/persistence.h"

#include "analytics/analytics.hpp"
#include "core/errors.hpp"
#include "core/simulate.hpp"
#include "gen/generators.hpp"
#include "oracle/oracle.hpp"
#include "verify/verify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

using persist::Rational;
using ordered_json = nlohmann::ordered_json;

extern "C" {

struct persist_stream {
  std::vector<Rational> values;
};

struct persist_policy {
  persist::Policy policy;
};

struct persist_trace {
  persist::Trace trace;
};

struct persist_model {
  persist::gen::StreamModel model;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

persist_status fail(persist_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class F>
persist_status guarded(F&& f) {
  try {
    f();
    return PERSIST_OK;
  } catch (const persist::GuardError& e) {
    return fail(PERSIST_ERR_GUARD, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PERSIST_ERR_USAGE, e.what());
  } catch (const std::domain_error& e) {
    return fail(PERSIST_ERR_DOMAIN, e.what());
  } catch (const std::out_of_range& e) {
    return fail(PERSIST_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(PERSIST_ERR_INTERNAL, e.what());
  }
}

bool null_args(std::initializer_list<const void*> args) {
  for (const void* a : args) {
    if (a == nullptr) return true;
  }
  return false;
}

persist_status usage_null() { return fail(PERSIST_ERR_USAGE, "null argument"); }

char* rational_out(const Rational& q) { return dup_string(persist::rational_str(q)); }

persist::Horizon to_horizon(persist_horizon h) {
  return h == PERSIST_HORIZON_N_PLUS_ONE ? persist::Horizon::NPlusOne : persist::Horizon::NSteps;
}

// r index of the iid support for an arbitrary threshold: first value >= T,
// or k when the threshold clears the whole support (the stay-put case).
std::size_t iid_threshold_index(const std::vector<Rational>& values, const Rational& threshold) {
  return static_cast<std::size_t>(
      std::lower_bound(values.begin(), values.end(), threshold) - values.begin());
}

// count of permutation values at or above an arbitrary threshold
std::uint64_t perm_threshold_count(std::vector<Rational> values, const Rational& threshold) {
  std::sort(values.begin(), values.end());
  return static_cast<std::uint64_t>(
      values.end() - std::lower_bound(values.begin(), values.end(), threshold));
}

ordered_json forecast_record(const persist::gen::StreamModel& model,
                             const persist::Policy* policy) {
  using persist::analytics::Record;
  ordered_json out;

  auto fill = [&out](const Record& record) {
    for (const auto& [key, value] : record) out[key] = value;
  };

  if (const auto* perm = std::get_if<persist::gen::PermutationModel>(&model)) {
    if (policy == nullptr) {
      std::vector<Rational> values = perm->values;
      Rational total = 0;
      for (const Rational& v : values) total += v;
      out["model"] = "permutation";
      out["horizon"] = "n+1";
      out["n"] = values.size();
      out["policy"] = "offline";
      out["total_weight"] = persist::rational_str(total);
      out["opt_relative"] = persist::rational_str(persist::analytics::perm_opt_relative(values));
      out["opt_total"] =
          persist::rational_str(persist::analytics::perm_opt_total(values, persist::Horizon::NPlusOne));
      return out;
    }
    std::uint64_t k = 0;
    if (const auto* t = std::get_if<persist::ThresholdPolicy>(policy)) {
      k = perm_threshold_count(perm->values, t->threshold);
    }
    auto record = persist::analytics::to_record(
        persist::analytics::permutation_forecast(perm->values, k));
    fill(record);
    out["policy"] = std::holds_alternative<persist::NaivePolicy>(*policy) ? "naive" : "threshold";
    return out;
  }

  const auto& iid = std::get<persist::gen::IidModel>(model);
  if (policy == nullptr) {
    out["model"] = "iid";
    out["horizon"] = "n";
    out["support"] = iid.values.size();
    out["n"] = iid.length;
    out["policy"] = "offline";
    Rational avg = 0;
    for (std::size_t i = 0; i < iid.values.size(); ++i) avg += iid.values[i] * iid.probs[i];
    out["avg"] = persist::rational_str(avg);
    out["opt_relative"] =
        persist::rational_str(persist::analytics::iid_opt_relative(iid.values, iid.probs));
    return out;
  }
  std::size_t r = iid.values.size();
  if (const auto* t = std::get_if<persist::ThresholdPolicy>(policy)) {
    r = iid_threshold_index(iid.values, t->threshold);
  }
  auto record = persist::analytics::to_record(
      persist::analytics::iid_forecast(iid.values, iid.probs, r, iid.length));
  fill(record);
  out["policy"] = std::holds_alternative<persist::NaivePolicy>(*policy) ? "naive" : "threshold";
  return out;
}

}  // namespace

extern "C" {

const char* persist_version(void) { return "1.0.0"; }

const char* persist_last_error(void) { return g_last_error.c_str(); }

void persist_string_free(char* s) { std::free(s); }

/* ---------------------------------------------------------------- streams */

persist_status persist_stream_from_strings(const char* const* items, size_t count,
                                           persist_stream** out) {
  if (null_args({items, out})) return usage_null();
  return guarded([&] {
    auto stream = std::make_unique<persist_stream>();
    stream->values.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (items[i] == nullptr) throw std::invalid_argument("null value string");
      stream->values.push_back(persist::parse_rational(items[i]));
    }
    *out = stream.release();
  });
}

persist_status persist_stream_from_file(const char* path, persist_stream** out) {
  if (null_args({path, out})) return usage_null();
  return guarded([&] {
    auto stream = std::make_unique<persist_stream>();
    stream->values = persist::read_rational_file(path);
    *out = stream.release();
  });
}

persist_status persist_stream_alternating(const char* lo, const char* hi, uint64_t length,
                                          persist_stream** out) {
  if (null_args({lo, hi, out})) return usage_null();
  return guarded([&] {
    auto stream = std::make_unique<persist_stream>();
    stream->values = persist::gen::alternating_adversary(persist::parse_rational(lo),
                                                         persist::parse_rational(hi),
                                                         static_cast<std::size_t>(length))
                         .values();
    *out = stream.release();
  });
}

persist_status persist_stream_sample(const persist_model* model, uint64_t seed,
                                     persist_stream** out) {
  if (null_args({model, out})) return usage_null();
  return guarded([&] {
    auto stream = std::make_unique<persist_stream>();
    stream->values = persist::gen::sample_stream(model->model, seed).values();
    *out = stream.release();
  });
}

persist_status persist_stream_length(const persist_stream* s, uint64_t* out) {
  if (null_args({s, out})) return usage_null();
  *out = s->values.size();
  return PERSIST_OK;
}

persist_status persist_stream_value(const persist_stream* s, uint64_t index, char** out) {
  if (null_args({s, out})) return usage_null();
  if (index >= s->values.size()) return fail(PERSIST_ERR_DOMAIN, "value index out of range");
  *out = rational_out(s->values[index]);
  return PERSIST_OK;
}

void persist_stream_free(persist_stream* s) { delete s; }

persist_status persist_buffer_at(const persist_stream* s, uint64_t t, int* slot0_present,
                                 char** slot0, int* slot1_present, char** slot1) {
  if (null_args({s, slot0_present, slot0, slot1_present, slot1})) return usage_null();
  return guarded([&] {
    const persist::BufferView view = persist::buffer_at(persist::Stream(s->values), t);
    *slot0_present = view.slot0.has_value() ? 1 : 0;
    *slot0 = view.slot0 ? rational_out(*view.slot0) : nullptr;
    *slot1_present = view.slot1.has_value() ? 1 : 0;
    *slot1 = view.slot1 ? rational_out(*view.slot1) : nullptr;
  });
}

/* ---------------------------------------------------------------- policies */

persist_status persist_policy_naive(persist_policy** out) {
  if (null_args({out})) return usage_null();
  *out = new persist_policy{persist::NaivePolicy{}};
  return PERSIST_OK;
}

persist_status persist_policy_threshold(const char* threshold, persist_policy** out) {
  if (null_args({threshold, out})) return usage_null();
  return guarded([&] {
    *out = new persist_policy{persist::ThresholdPolicy{persist::parse_rational(threshold)}};
  });
}

persist_status persist_policy_rank(const persist_stream* values, uint64_t k,
                                   persist_policy** out) {
  if (null_args({values, out})) return usage_null();
  return guarded([&] {
    *out = new persist_policy{persist::ThresholdPolicy{
        persist::rank_threshold(values->values, static_cast<std::size_t>(k))}};
  });
}

persist_status persist_policy_median(const persist_stream* values, persist_policy** out) {
  if (null_args({values, out})) return usage_null();
  return guarded(
      [&] { *out = new persist_policy{persist::ThresholdPolicy{persist::median_threshold(values->values)}}; });
}

void persist_policy_free(persist_policy* p) { delete p; }

persist_status persist_median_threshold(const persist_stream* values, char** out) {
  if (null_args({values, out})) return usage_null();
  return guarded([&] { *out = rational_out(persist::median_threshold(values->values)); });
}

persist_status persist_rank_threshold(const persist_stream* values, uint64_t k, char** out) {
  if (null_args({values, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::rank_threshold(values->values, static_cast<std::size_t>(k)));
  });
}

/* ------------------------------------------------------------------ engine */

persist_status persist_simulate(const persist_stream* s, const persist_policy* p,
                                persist_horizon horizon, persist_trace** out) {
  if (null_args({s, p, out})) return usage_null();
  return guarded([&] {
    auto trace = std::make_unique<persist_trace>();
    trace->trace = persist::simulate(persist::Stream(s->values), p->policy, to_horizon(horizon));
    *out = trace.release();
  });
}

persist_status persist_trace_total(const persist_trace* t, char** out) {
  if (null_args({t, out})) return usage_null();
  *out = rational_out(t->trace.total_payoff);
  return PERSIST_OK;
}

persist_status persist_trace_relative(const persist_trace* t, char** out) {
  if (null_args({t, out})) return usage_null();
  return guarded([&] {
    const Rational steps(static_cast<unsigned long>(t->trace.steps.size()));
    *out = rational_out(t->trace.total_payoff / steps);
  });
}

persist_status persist_trace_step_count(const persist_trace* t, uint64_t* out) {
  if (null_args({t, out})) return usage_null();
  *out = t->trace.steps.size();
  return PERSIST_OK;
}

persist_status persist_trace_step(const persist_trace* t, uint64_t index, uint64_t* time,
                                  int* position, int* observed, char** value) {
  if (null_args({t, time, position, observed, value})) return usage_null();
  if (index >= t->trace.steps.size()) return fail(PERSIST_ERR_DOMAIN, "step index out of range");
  const persist::TraceStep& step = t->trace.steps[static_cast<std::size_t>(index)];
  *time = step.time;
  *position = static_cast<int>(step.position);
  *observed = step.observed.has_value() ? 1 : 0;
  *value = step.observed ? rational_out(*step.observed) : nullptr;
  return PERSIST_OK;
}

persist_status persist_trace_observation_count(const persist_trace* t, uint64_t item, int* out) {
  if (null_args({t, out})) return usage_null();
  if (item >= t->trace.observation_count.size())
    return fail(PERSIST_ERR_DOMAIN, "item index out of range");
  *out = t->trace.observation_count[static_cast<std::size_t>(item)];
  return PERSIST_OK;
}

void persist_trace_free(persist_trace* t) { delete t; }

persist_status persist_offline_payoff(const persist_stream* s, persist_horizon horizon,
                                      char** total, char** relative) {
  if (null_args({s, total, relative})) return usage_null();
  return guarded([&] {
    const persist::Stream stream(s->values);
    const Rational value = persist::offline_payoff(stream, to_horizon(horizon));
    const Rational steps(
        static_cast<unsigned long>(persist::step_count(stream, to_horizon(horizon))));
    *total = rational_out(value);
    *relative = rational_out(value / steps);
  });
}

persist_status persist_offline_dp(const persist_stream* s, persist_horizon horizon, char** value,
                                  char** schedule) {
  if (null_args({s, value, schedule})) return usage_null();
  return guarded([&] {
    const persist::OfflinePlan plan =
        persist::offline_dp(persist::Stream(s->values), to_horizon(horizon));
    std::string digits;
    digits.reserve(plan.schedule.size());
    for (persist::Slot slot : plan.schedule)
      digits.push_back(slot == persist::Slot::L0 ? '0' : '1');
    *value = rational_out(plan.value);
    *schedule = dup_string(digits);
  });
}

/* ------------------------------------------------------------------ models */

persist_status persist_model_permutation(const persist_stream* values, persist_model** out) {
  if (null_args({values, out})) return usage_null();
  return guarded([&] {
    if (values->values.empty()) throw std::invalid_argument("permutation model needs values");
    *out = new persist_model{persist::gen::PermutationModel{values->values}};
  });
}

persist_status persist_model_iid(const persist_stream* values, const persist_stream* probs,
                                 uint64_t length, persist_model** out) {
  if (null_args({values, probs, out})) return usage_null();
  return guarded([&] {
    *out = new persist_model{persist::gen::make_iid_model(values->values, probs->values,
                                                          static_cast<std::size_t>(length))};
  });
}

void persist_model_free(persist_model* m) { delete m; }

/* ----------------------------------------------------------------- density */

persist_status persist_measure_density(const persist_stream* values, char** c, uint64_t* top_count,
                                       char** lhs, char** rhs, char** residual) {
  if (null_args({values, c, top_count, lhs, rhs, residual})) return usage_null();
  return guarded([&] {
    const persist::gen::DensityReport report = persist::gen::measure_density(values->values);
    *c = rational_out(report.c);
    *top_count = report.top_count;
    *lhs = rational_out(report.lhs);
    *rhs = rational_out(report.rhs);
    *residual = rational_out(report.residual);
  });
}

persist_status persist_synth_c_dense(const char* c, uint64_t t, persist_stream** out) {
  if (null_args({c, out})) return usage_null();
  return guarded([&] {
    auto stream = std::make_unique<persist_stream>();
    stream->values =
        persist::gen::synth_c_dense(persist::parse_rational(c), static_cast<std::size_t>(t));
    *out = stream.release();
  });
}

/* ------------------------------------------------------------ closed forms */

persist_status persist_f_tnk(uint64_t t, uint64_t n, uint64_t k, char** out) {
  if (null_args({out})) return usage_null();
  return guarded([&] { *out = rational_out(persist::analytics::f_tnk(t, n, k)); });
}

persist_status persist_identity_sum_f_a(uint64_t n, uint64_t k, char** lhs, char** rhs) {
  if (null_args({lhs, rhs})) return usage_null();
  return guarded([&] {
    const auto pair = persist::analytics::identity_sum_f_a(n, k);
    *lhs = rational_out(pair.lhs);
    *rhs = rational_out(pair.rhs);
  });
}

persist_status persist_identity_sum_f_b(uint64_t n, uint64_t k, char** lhs, char** rhs) {
  if (null_args({lhs, rhs})) return usage_null();
  return guarded([&] {
    const auto pair = persist::analytics::identity_sum_f_b(n, k);
    *lhs = rational_out(pair.lhs);
    *rhs = rational_out(pair.rhs);
  });
}

persist_status persist_asymptotic_coefficient(uint64_t n, uint64_t k, char** out) {
  if (null_args({out})) return usage_null();
  return guarded([&] { *out = rational_out(persist::analytics::asymptotic_coefficient(n, k)); });
}

persist_status persist_perm_opt_relative(const persist_stream* values, char** out) {
  if (null_args({values, out})) return usage_null();
  return guarded([&] { *out = rational_out(persist::analytics::perm_opt_relative(values->values)); });
}

persist_status persist_perm_opt_total(const persist_stream* values, persist_horizon horizon,
                                      char** out) {
  if (null_args({values, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::perm_opt_total(values->values, to_horizon(horizon)));
  });
}

persist_status persist_perm_threshold_total(const persist_stream* values, uint64_t k, char** out) {
  if (null_args({values, out})) return usage_null();
  return guarded(
      [&] { *out = rational_out(persist::analytics::perm_threshold_total(values->values, k)); });
}

persist_status persist_perm_threshold_relative_asymptotic(const char* total_weight,
                                                          const char* top_weight, uint64_t n,
                                                          const char* c, char** out) {
  if (null_args({total_weight, top_weight, c, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::perm_threshold_relative_asymptotic(
        persist::parse_rational(total_weight), persist::parse_rational(top_weight), n,
        persist::parse_rational(c)));
  });
}

persist_status persist_iid_opt_relative(const persist_stream* values, const persist_stream* probs,
                                        char** out) {
  if (null_args({values, probs, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::iid_opt_relative(values->values, probs->values));
  });
}

persist_status persist_iid_threshold_relative(const persist_stream* values,
                                              const persist_stream* probs, uint64_t r, char** out) {
  if (null_args({values, probs, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::iid_threshold_relative(values->values, probs->values,
                                                                   static_cast<std::size_t>(r)));
  });
}

persist_status persist_iid_threshold_total(const persist_stream* values,
                                           const persist_stream* probs, uint64_t r, uint64_t n,
                                           char** out) {
  if (null_args({values, probs, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::iid_threshold_total(values->values, probs->values,
                                                                static_cast<std::size_t>(r), n));
  });
}

persist_status persist_q_recurrence(uint64_t i, const char* p, char** out) {
  if (null_args({p, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::q_recurrence(i, persist::parse_rational(p)));
  });
}

persist_status persist_q_closed_form(uint64_t i, const char* p, char** out) {
  if (null_args({p, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::q_closed_form(i, persist::parse_rational(p)));
  });
}

persist_status persist_q_printed_form(uint64_t i, const char* p, char** out) {
  if (null_args({p, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::q_printed_form(i, persist::parse_rational(p)));
  });
}

persist_status persist_rho(const char* c, char** out) {
  if (null_args({c, out})) return usage_null();
  return guarded([&] { *out = rational_out(persist::analytics::rho(persist::parse_rational(c))); });
}

persist_status persist_competitive_bound_perm(const char* total_weight, const char* top_weight,
                                              const char* c, char** out) {
  if (null_args({total_weight, top_weight, c, out})) return usage_null();
  return guarded([&] {
    *out = rational_out(persist::analytics::competitive_bound_perm(
        persist::parse_rational(total_weight), persist::parse_rational(top_weight),
        persist::parse_rational(c)));
  });
}

persist_status persist_forecast_json(const persist_model* model, const persist_policy* policy,
                                     char** json_out) {
  if (null_args({model, json_out})) return usage_null();
  return guarded([&] {
    const ordered_json record =
        forecast_record(model->model, policy != nullptr ? &policy->policy : nullptr);
    *json_out = dup_string(record.dump());
  });
}

/* ------------------------------------------------------------ ground truth */

persist_status persist_enumerate(const persist_model* model, const persist_policy* policy,
                                 persist_horizon horizon, char** mean, char** mean_relative,
                                 uint64_t* outcomes) {
  if (null_args({model, mean, mean_relative, outcomes})) return usage_null();
  return guarded([&] {
    const persist::oracle::Subject subject =
        policy != nullptr ? persist::oracle::Subject(policy->policy) : std::nullopt;
    persist::oracle::ExactExpectation result;
    if (const auto* perm = std::get_if<persist::gen::PermutationModel>(&model->model)) {
      result = persist::oracle::enumerate_permutation_expectation(perm->values, subject,
                                                                  to_horizon(horizon));
    } else {
      result = persist::oracle::enumerate_iid_expectation(
          std::get<persist::gen::IidModel>(model->model), subject, to_horizon(horizon));
    }
    const std::uint64_t length = persist::gen::model_length(model->model);
    const std::uint64_t steps =
        to_horizon(horizon) == persist::Horizon::NPlusOne ? length + 1 : length;
    *mean = rational_out(result.value);
    *mean_relative = rational_out(result.value / Rational(static_cast<unsigned long>(steps)));
    *outcomes = result.outcomes;
  });
}

persist_status persist_monte_carlo(const persist_model* model, const persist_policy* policy,
                                   persist_horizon horizon, uint64_t trials, uint64_t base_seed,
                                   int relative, unsigned workers, char** mean, double* mean_value,
                                   double* std_error) {
  if (null_args({model, mean, mean_value, std_error})) return usage_null();
  return guarded([&] {
    const persist::oracle::Subject subject =
        policy != nullptr ? persist::oracle::Subject(policy->policy) : std::nullopt;
    const persist::oracle::MonteCarloEstimate est = persist::oracle::monte_carlo(
        model->model, subject, trials, base_seed, to_horizon(horizon), relative != 0, workers);
    *mean = rational_out(est.mean);
    *mean_value = persist::to_double(est.mean);
    *std_error = est.std_error;
  });
}

/* ----------------------------------------------------------- verification */

persist_status persist_verify_run(char** json_report, int* all_passed) {
  if (null_args({json_report, all_passed})) return usage_null();
  return guarded([&] {
    const auto results = persist::verify::run_all_checks();
    ordered_json report = ordered_json::array();
    for (const auto& r : results) {
      ordered_json item;
      item["name"] = r.name;
      item["summary"] = r.summary;
      item["passed"] = r.passed;
      item["detail"] = r.detail;
      report.push_back(std::move(item));
    }
    *json_report = dup_string(report.dump());
    *all_passed = persist::verify::all_passed(results) ? 1 : 0;
  });
}

/* ------------------------------------------------------------- sweep rows */

persist_status persist_sweep_cdense_row(const char* c, uint64_t t, char** json_row) {
  if (null_args({c, json_row})) return usage_null();
  return guarded([&] {
    const Rational density = persist::parse_rational(c);
    ordered_json row;
    row["family"] = "cdense";
    row["c"] = persist::rational_str(density);
    row["t"] = t;

    std::vector<Rational> values;
    try {
      values = persist::gen::synth_c_dense(density, static_cast<std::size_t>(t));
    } catch (const std::domain_error& e) {
      row["feasible"] = false;
      row["error"] = e.what();
      *json_row = dup_string(row.dump());
      return;
    }

    std::sort(values.begin(), values.end());
    Rational total = 0;
    for (const Rational& v : values) total += v;
    const auto report = persist::gen::measure_density(values);
    Rational top = 0;
    for (std::uint64_t i = 0; i < report.top_count; ++i) top += values[values.size() - 1 - i];

    const Rational alg = persist::analytics::perm_threshold_relative_asymptotic(
        total, top, t, density);
    const Rational opt_bound = Rational(2, 1) * ((1 - density) * total + density * top) /
                               Rational(static_cast<unsigned long>(t));
    const Rational ratio = persist::analytics::competitive_bound_perm(total, top, density);
    const Rational spectrum = persist::analytics::rho(density);

    row["feasible"] = true;
    row["top_count"] = report.top_count;
    row["heavy_value"] = persist::rational_str(values.back());
    row["total_weight"] = persist::rational_str(total);
    row["top_weight"] = persist::rational_str(top);
    row["alg_relative_asymptotic"] = persist::rational_str(alg);
    row["opt_bound_relative"] = persist::rational_str(opt_bound);
    row["ratio"] = persist::rational_str(ratio);
    row["ratio_value"] = persist::to_double(ratio);
    row["rho"] = persist::rational_str(spectrum);
    row["rho_value"] = persist::to_double(spectrum);
    row["ratio_minus_rho"] = persist::rational_str(ratio - spectrum);
    *json_row = dup_string(row.dump());
  });
}

persist_status persist_sweep_adversarial_row(const char* lo, const char* hi, uint64_t length,
                                             char** json_row) {
  if (null_args({lo, hi, json_row})) return usage_null();
  return guarded([&] {
    const Rational low = persist::parse_rational(lo);
    const Rational high = persist::parse_rational(hi);
    const persist::Stream stream =
        persist::gen::alternating_adversary(low, high, static_cast<std::size_t>(length));

    const Rational naive_total =
        persist::simulate_total(stream, persist::NaivePolicy{}, persist::Horizon::NSteps);
    const Rational threshold_total =
        persist::simulate_total(stream, persist::ThresholdPolicy{low}, persist::Horizon::NSteps);
    const Rational offline = persist::offline_payoff(stream, persist::Horizon::NSteps);

    const Rational naive_ratio = naive_total / offline;
    const Rational threshold_ratio = threshold_total / offline;
    const Rational naive_limit = (low + high) / (2 * high);
    const Rational threshold_limit = low / high;

    ordered_json row;
    row["family"] = "adversarial";
    row["lo"] = persist::rational_str(low);
    row["hi"] = persist::rational_str(high);
    row["n"] = length;
    row["horizon"] = "n";
    row["naive_total"] = persist::rational_str(naive_total);
    row["threshold_total"] = persist::rational_str(threshold_total);
    row["offline_total"] = persist::rational_str(offline);
    row["naive_ratio"] = persist::rational_str(naive_ratio);
    row["naive_ratio_value"] = persist::to_double(naive_ratio);
    row["naive_ratio_limit"] = persist::rational_str(naive_limit);
    row["threshold_ratio"] = persist::rational_str(threshold_ratio);
    row["threshold_ratio_value"] = persist::to_double(threshold_ratio);
    row["threshold_ratio_limit"] = persist::rational_str(threshold_limit);
    *json_row = dup_string(row.dump());
  });
}

}  // extern "C"
