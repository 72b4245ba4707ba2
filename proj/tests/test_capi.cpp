// Exercises the shared-library surface exactly as an external consumer
// would: through persistence.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <persistence/persistence.h>

#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  persist_string_free(s);
  return out;
}

persist_stream* stream_of(const std::vector<std::string>& items) {
  std::vector<const char*> raw;
  raw.reserve(items.size());
  for (const auto& s : items) raw.push_back(s.c_str());
  persist_stream* out = nullptr;
  REQUIRE(persist_stream_from_strings(raw.data(), raw.size(), &out) == PERSIST_OK);
  return out;
}

}  // namespace

TEST_CASE("stream handles round-trip values") {
  persist_stream* s = stream_of({"1", "3", "2"});
  uint64_t n = 0;
  CHECK(persist_stream_length(s, &n) == PERSIST_OK);
  CHECK(n == 3);
  char* v = nullptr;
  CHECK(persist_stream_value(s, 1, &v) == PERSIST_OK);
  CHECK(take(v) == "3/1");
  CHECK(persist_stream_value(s, 9, &v) == PERSIST_ERR_DOMAIN);
  persist_stream_free(s);

  persist_stream* bad = nullptr;
  const char* items[] = {"zzz"};
  CHECK(persist_stream_from_strings(items, 1, &bad) == PERSIST_ERR_USAGE);
  CHECK(std::string(persist_last_error()).find("zzz") != std::string::npos);
}

TEST_CASE("buffer boundaries are explicit") {
  persist_stream* s = stream_of({"1", "3", "2"});
  int p0 = 0, p1 = 0;
  char* v0 = nullptr;
  char* v1 = nullptr;
  CHECK(persist_buffer_at(s, 1, &p0, &v0, &p1, &v1) == PERSIST_OK);
  CHECK(p0 == 1);
  CHECK(take(v0) == "1/1");
  CHECK(p1 == 0);
  CHECK(v1 == nullptr);
  CHECK(persist_buffer_at(s, 4, &p0, &v0, &p1, &v1) == PERSIST_OK);
  CHECK(p0 == 0);
  CHECK(p1 == 1);
  CHECK(take(v1) == "2/1");
  CHECK(persist_buffer_at(s, 5, &p0, &v0, &p1, &v1) == PERSIST_ERR_DOMAIN);
  persist_stream_free(s);
}

TEST_CASE("simulation through the C surface") {
  persist_stream* s = stream_of({"1", "3", "2"});
  persist_policy* p = nullptr;
  REQUIRE(persist_policy_threshold("3", &p) == PERSIST_OK);

  persist_trace* t = nullptr;
  REQUIRE(persist_simulate(s, p, PERSIST_HORIZON_N_PLUS_ONE, &t) == PERSIST_OK);

  char* total = nullptr;
  CHECK(persist_trace_total(t, &total) == PERSIST_OK);
  CHECK(take(total) == "7/1");

  char* relative = nullptr;
  CHECK(persist_trace_relative(t, &relative) == PERSIST_OK);
  CHECK(take(relative) == "7/4");

  uint64_t steps = 0;
  CHECK(persist_trace_step_count(t, &steps) == PERSIST_OK);
  CHECK(steps == 4);

  uint64_t time = 0;
  int position = -1, observed = -1;
  char* value = nullptr;
  CHECK(persist_trace_step(t, 3, &time, &position, &observed, &value) == PERSIST_OK);
  CHECK(time == 4);
  CHECK(position == 0);
  CHECK(observed == 0);
  CHECK(value == nullptr);

  int count = -1;
  CHECK(persist_trace_observation_count(t, 1, &count) == PERSIST_OK);
  CHECK(count == 2);
  CHECK(persist_trace_observation_count(t, 2, &count) == PERSIST_OK);
  CHECK(count == 0);

  persist_trace_free(t);
  persist_policy_free(p);
  persist_stream_free(s);
}

TEST_CASE("offline computations through the C surface") {
  persist_stream* s = stream_of({"1", "3", "2"});
  char* total = nullptr;
  char* relative = nullptr;
  CHECK(persist_offline_payoff(s, PERSIST_HORIZON_N_PLUS_ONE, &total, &relative) == PERSIST_OK);
  CHECK(take(total) == "9/1");
  CHECK(take(relative) == "9/4");

  char* value = nullptr;
  char* schedule = nullptr;
  CHECK(persist_offline_dp(s, PERSIST_HORIZON_N_PLUS_ONE, &value, &schedule) == PERSIST_OK);
  CHECK(take(value) == "9/1");
  CHECK(take(schedule).size() == 4);
  persist_stream_free(s);
}

TEST_CASE("policy builders and thresholds") {
  persist_stream* values = stream_of({"1", "2", "3", "4"});
  char* median = nullptr;
  CHECK(persist_median_threshold(values, &median) == PERSIST_OK);
  CHECK(take(median) == "3/1");
  char* second = nullptr;
  CHECK(persist_rank_threshold(values, 2, &second) == PERSIST_OK);
  CHECK(take(second) == "3/1");
  CHECK(persist_rank_threshold(values, 9, &second) == PERSIST_ERR_DOMAIN);
  persist_stream_free(values);
}

TEST_CASE("density functions through the C surface") {
  persist_stream* values = stream_of({"1", "1", "1", "9"});
  char* c = nullptr;
  char* lhs = nullptr;
  char* rhs = nullptr;
  char* residual = nullptr;
  uint64_t top = 0;
  CHECK(persist_measure_density(values, &c, &top, &lhs, &rhs, &residual) == PERSIST_OK);
  CHECK(take(c) == "1/4");
  CHECK(top == 1);
  CHECK(take(residual) == "0/1");
  take(lhs);
  take(rhs);
  persist_stream_free(values);

  persist_stream* synth = nullptr;
  CHECK(persist_synth_c_dense("1/4", 4, &synth) == PERSIST_OK);
  uint64_t n = 0;
  CHECK(persist_stream_length(synth, &n) == PERSIST_OK);
  CHECK(n == 4);
  char* heavy = nullptr;
  CHECK(persist_stream_value(synth, 3, &heavy) == PERSIST_OK);
  CHECK(take(heavy) == "9/1");
  persist_stream_free(synth);

  CHECK(persist_synth_c_dense("9/10", 4, &synth) == PERSIST_ERR_DOMAIN);
}

TEST_CASE("closed forms through the C surface") {
  char* out = nullptr;
  CHECK(persist_rho("1/2", &out) == PERSIST_OK);
  CHECK(take(out) == "2/3");
  CHECK(persist_rho("3/4", &out) == PERSIST_ERR_DOMAIN);

  CHECK(persist_f_tnk(2, 3, 2, &out) == PERSIST_OK);
  CHECK(take(out) == "1/2");

  char* lhs = nullptr;
  char* rhs = nullptr;
  CHECK(persist_identity_sum_f_a(12, 5, &lhs, &rhs) == PERSIST_OK);
  CHECK(take(lhs) == take(rhs));

  CHECK(persist_q_closed_form(2, "1/2", &out) == PERSIST_OK);
  CHECK(take(out) == "3/4");

  CHECK(persist_competitive_bound_perm("10/1", "5/1", "1/2", &out) == PERSIST_OK);
  CHECK(take(out) == "2/3");
}

TEST_CASE("models, enumeration and forecasts through the C surface") {
  persist_stream* values = stream_of({"1", "2", "3"});
  persist_model* model = nullptr;
  REQUIRE(persist_model_permutation(values, &model) == PERSIST_OK);

  persist_policy* top = nullptr;
  REQUIRE(persist_policy_rank(values, 1, &top) == PERSIST_OK);

  char* mean = nullptr;
  char* relative = nullptr;
  uint64_t outcomes = 0;
  CHECK(persist_enumerate(model, top, PERSIST_HORIZON_N_PLUS_ONE, &mean, &relative, &outcomes) ==
        PERSIST_OK);
  CHECK(take(mean) == "8/1");
  CHECK(take(relative) == "2/1");
  CHECK(outcomes == 6);

  char* forecast = nullptr;
  CHECK(persist_forecast_json(model, top, &forecast) == PERSIST_OK);
  const std::string json = take(forecast);
  CHECK(json.find("\"alg_total_exact\":\"8/1\"") != std::string::npos);
  CHECK(json.find("\"opt_total\":\"28/3\"") != std::string::npos);

  persist_policy_free(top);
  persist_model_free(model);
  persist_stream_free(values);
}

TEST_CASE("enumeration guard surfaces as a distinct status") {
  persist_stream* values =
      stream_of({"1", "2", "3", "4", "5", "6", "7", "8", "9", "10"});
  persist_model* model = nullptr;
  REQUIRE(persist_model_permutation(values, &model) == PERSIST_OK);
  char* mean = nullptr;
  char* relative = nullptr;
  uint64_t outcomes = 0;
  CHECK(persist_enumerate(model, nullptr, PERSIST_HORIZON_N, &mean, &relative, &outcomes) ==
        PERSIST_ERR_GUARD);
  persist_model_free(model);
  persist_stream_free(values);
}

TEST_CASE("monte carlo through the C surface is worker-invariant") {
  persist_stream* values = stream_of({"0", "1"});
  persist_stream* probs = stream_of({"1/2", "1/2"});
  persist_model* model = nullptr;
  REQUIRE(persist_model_iid(values, probs, 500, &model) == PERSIST_OK);
  persist_policy* policy = nullptr;
  REQUIRE(persist_policy_threshold("1", &policy) == PERSIST_OK);

  char* mean1 = nullptr;
  char* mean4 = nullptr;
  double value1 = 0, value4 = 0, err1 = 0, err4 = 0;
  CHECK(persist_monte_carlo(model, policy, PERSIST_HORIZON_N, 50, 7, 1, 1, &mean1, &value1,
                            &err1) == PERSIST_OK);
  CHECK(persist_monte_carlo(model, policy, PERSIST_HORIZON_N, 50, 7, 1, 4, &mean4, &value4,
                            &err4) == PERSIST_OK);
  CHECK(take(mean1) == take(mean4));
  CHECK(value1 == value4);
  CHECK(err1 == err4);

  persist_policy_free(policy);
  persist_model_free(model);
  persist_stream_free(probs);
  persist_stream_free(values);
}

TEST_CASE("sweep rows are well-formed JSON objects") {
  char* row = nullptr;
  CHECK(persist_sweep_cdense_row("1/2", 100, &row) == PERSIST_OK);
  std::string cdense = take(row);
  CHECK(cdense.find("\"rho\":\"2/3\"") != std::string::npos);
  CHECK(cdense.find("\"feasible\":true") != std::string::npos);

  CHECK(persist_sweep_cdense_row("1/100", 10, &row) == PERSIST_OK);
  CHECK(take(row).find("\"feasible\":false") != std::string::npos);

  CHECK(persist_sweep_adversarial_row("1", "1000", 100, &row) == PERSIST_OK);
  std::string adversarial = take(row);
  CHECK(adversarial.find("\"naive_ratio\"") != std::string::npos);
  CHECK(adversarial.find("\"threshold_ratio_limit\":\"1/1000\"") != std::string::npos);
}

TEST_CASE("null arguments are usage errors") {
  CHECK(persist_rho(nullptr, nullptr) == PERSIST_ERR_USAGE);
  CHECK(persist_stream_from_file(nullptr, nullptr) == PERSIST_ERR_USAGE);
}
