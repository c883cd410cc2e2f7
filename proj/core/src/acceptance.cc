// Copyright 2026 The quoin-factory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quoin/acceptance.h"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <functional>
#include <memory>

#include "quoin/analysis.h"
#include "quoin/envelope.h"
#include "quoin/exact.h"
#include "quoin/factory.h"
#include "quoin/oracle.h"
#include "quoin/pipeline.h"
#include "quoin/quoin.h"
#include "quoin/runner.h"

namespace quoin {
namespace {

struct TableRow {
  double theta_deg;
  double p;
  double q_th;
  double f_th;
};

// Measured p and the two theory columns of the published results table.
constexpr std::array<TableRow, 12> kResultsTable = {{
    {0, 0.996, 0.563, 0.016},
    {15, 0.979, 0.644, 0.083},
    {30, 0.929, 0.756, 0.262},
    {45, 0.850, 0.857, 0.509},
    {60, 0.748, 0.934, 0.754},
    {75, 0.630, 0.983, 0.933},
    {90, 0.502, 1.000, 1.000},
    {105, 0.375, 0.984, 0.938},
    {120, 0.258, 0.938, 0.766},
    {135, 0.157, 0.864, 0.530},
    {150, 0.080, 0.772, 0.296},
    {165, 0.033, 0.678, 0.126},
}};

constexpr double kTableTolerance = 0.001;
// Half a unit in the last printed digit of the p column.
constexpr double kPrintedHalfUlp = 0.0005;
// Absorbs binary representation error when a difference equals the tolerance.
constexpr double kFloatSlack = 1e-9;
constexpr double kSigmas = 4.0;

std::uint32_t tag(std::uint32_t criterion, std::uint32_t item) { return tags::kAcceptance | (criterion << 20) | item; }

CriterionResult guarded(int id, const char* name, const std::function<void(CriterionResult&)>& body) {
  CriterionResult result{id, name, false, {}};
  try {
    body(result);
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = fmt::format("error: {}", e.what());
  }
  return result;
}

bool row_matches(double p, const TableRow& row) {
  const auto th = theory_row(p);
  return std::abs(th.q_th - row.q_th) <= kTableTolerance + kFloatSlack &&
         std::abs(th.f_th - row.f_th) <= kTableTolerance + kFloatSlack;
}

OutputTally protocol_run(const QuoinSpec& spec, const NoiseModel& noise, std::uint64_t n, std::uint32_t stream_tag,
                         const AcceptanceOptions& options) {
  return sample_pipeline(
      [&](std::uint64_t stream) {
        return FactoryPipeline::quantum_f4p(spec, noise, PipelineOptions{}, options.seed, stream);
      },
      n, stream_tag, options.workers);
}

double binomial_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

// One line of the oracle suite: Monte Carlo estimate of a combinator against
// its oracle value at one bias.
struct SuitePoint {
  std::string combinator;
  double p;
  double oracle;
  BiasEstimate est;
  bool oracle_agrees;
  bool pass;
};

template <class State>
auto as_bits(std::unique_ptr<State> state) {
  return [s = std::move(state)]() { return s->toss(); };
}

struct DiffState {
  BiasedSource src;
  Bit toss() { return diff_coin(src); }
};

struct VonNeumannState {
  BiasedSource src;
  Bit toss() { return von_neumann(src, PipelineOptions{}.max_rounds); }
};

class DiffCoin final : public Coin {
 public:
  explicit DiffCoin(Coin& src) : src_(src) {}
  Bit toss() override { return diff_coin(src_); }

 private:
  Coin& src_;
};

class RaceCoin final : public Coin {
 public:
  explicit RaceCoin(Coin& m) : m_(m) {}
  Bit toss() override { return race_coin(m_, PipelineOptions{}.max_rounds, true); }

 private:
  Coin& m_;
};

struct RaceState {
  RaceState(double p, std::uint64_t seed, std::uint64_t stream) : src(p, seed, stream), m(src), s(m) {}
  BiasedSource src;
  DiffCoin m;
  RaceCoin s;
  Bit toss() { return s.toss(); }
};

// s from the race stage on diff(p); t from the race stage on an n-coin with
// n = 1/2 - 2p(1-p), the X-branch rate of an ideal quoin.
struct RatioState {
  RatioState(double p, double n, std::uint64_t seed, std::uint64_t stream)
      : p_src(p, seed, stream), n_src(n, seed + 1, stream), m(p_src), s(m), t(n_src) {}
  BiasedSource p_src;
  BiasedSource n_src;
  DiffCoin m;
  RaceCoin s;
  RaceCoin t;
  Bit toss() { return ratio_coin(s, t, PipelineOptions{}.max_rounds); }
};

struct SqrtState {
  SqrtState(double p, std::uint64_t seed, std::uint64_t stream) : src(p, seed, stream), aux(seed + kAuxKeyOffset, stream) {}
  BiasedSource src;
  Philox4x32 aux;
  Bit toss() { return sqrt_coin(src, aux, PipelineOptions{}.max_draws); }
};

struct DoubleState {
  DoubleState(double p, const TruncatedDoublingEnvelope& env, std::uint64_t seed, std::uint64_t stream)
      : src(p, seed, stream), aux(seed + kAuxKeyOffset, stream), envelope(env) {}
  BiasedSource src;
  Philox4x32 aux;
  const TruncatedDoublingEnvelope& envelope;
  Bit toss() { return truncated_double(src, envelope, aux, PipelineOptions{}.max_draws); }
};

}  // namespace

CriterionResult check_theory_table(const AcceptanceOptions&) {
  return guarded(1, "results-table theory columns", [](CriterionResult& r) {
    int at_printed = 0;
    int in_interval = 0;
    std::string misses;
    for (const auto& row : kResultsTable) {
      if (row_matches(row.p, row)) {
        ++at_printed;
      } else {
        const auto th = theory_row(row.p);
        misses += fmt::format(" {:g}deg(dq={:+.4f},df={:+.4f})", row.theta_deg, th.q_th - row.q_th,
                              th.f_th - row.f_th);
      }
      // The p column is itself rounded to three decimals; accept the row when
      // some p that prints the same reproduces both columns.
      bool found = false;
      for (int k = -500; k <= 500 && !found; ++k) {
        found = row_matches(row.p + kPrintedHalfUlp * k / 500.0, row);
      }
      in_interval += found ? 1 : 0;
    }
    r.pass = in_interval == static_cast<int>(kResultsTable.size());
    r.detail = fmt::format("{}/12 rows within +-0.001 for a p that rounds to the printed value; {}/12 at the printed p",
                           in_interval, at_printed);
    if (!misses.empty()) {
      r.detail += "; at printed p:" + misses;
    }
  });
}

CriterionResult check_ideal_protocol(const AcceptanceOptions& options) {
  return guarded(2, "ideal protocol exactness", [&](CriterionResult& r) {
    constexpr std::uint64_t n = 1'000'000;
    const auto half = protocol_run(QuoinSpec::from_degrees(90), NoiseModel::ideal(), n, tag(2, 0), options).estimate();
    const auto third_spec = QuoinSpec::from_probability(ExactProb(1) / 3);
    const auto third = protocol_run(third_spec, NoiseModel::ideal(), n, tag(2, 1), options).estimate();
    const double target = 8.0 / 9.0;
    const double tolerance = kSigmas * binomial_sigma(target, third.n_samples);
    const bool half_ok = half.p_hat >= 0.999;
    const bool third_ok = std::abs(third.p_hat - target) < tolerance;
    r.pass = half_ok && third_ok && half.n_samples == n && third.n_samples == n;
    r.detail = fmt::format("theta=90: f_hat={:.6f} (need >= 0.999, N={}); theta={:.2f}: f_hat={:.6f} vs 8/9, |diff|={:.2e} < {:.2e}",
                           half.p_hat, half.n_samples, third_spec.degrees(), third.p_hat,
                           std::abs(third.p_hat - target), tolerance);
  });
}

CriterionResult check_noisy_reproduction(const AcceptanceOptions& options) {
  return guarded(3, "noisy reproduction at theta=90", [&](CriterionResult& r) {
    constexpr std::uint64_t n = 1'000'000;
    const NoiseModel noise;
    const auto spec = QuoinSpec::from_degrees(90);
    const auto q = sample_quoins(spec, Basis::x(), noise, n, options.seed, tag(3, 0), options.workers).estimate();
    const auto f = protocol_run(spec, noise, n, tag(3, 1), options).estimate();
    const bool q_ok = std::abs(q.p_hat - 0.990) <= 0.010;
    const bool f_ok = std::abs(f.p_hat - 0.965) <= 0.020;
    r.pass = q_ok && f_ok;
    r.detail = fmt::format("q_hat={:.5f} (0.990 +- 0.010), f_hat={:.5f} (0.965 +- 0.020), N={}", q.p_hat, f.p_hat, n);
  });
}

CriterionResult check_consumption(const AcceptanceOptions& options) {
  return guarded(4, "quoin consumption at theta=90", [&](CriterionResult& r) {
    constexpr std::uint64_t n = 1'000'000;
    const auto spec = QuoinSpec::from_degrees(90);
    const double analytic = expected_consumption(0.5, true);
    // Independent exact evaluation of the same absorbing chain.
    const auto chain = oracle::quantum_protocol<Rational>(Rational(1, 2), Rational(1), true);
    const double chain_cost = to_double(to_exact(chain.cost));
    const double ideal_mean = protocol_run(spec, NoiseModel::ideal(), n, tag(4, 0), options).mean_consumption();

    // Same comparison under the default noise, against the chain evaluated at
    // the noisy per-basis head probabilities.
    const NoiseModel noise;
    const double pz = to_double(noisy_outcome_prob(spec, Basis::z(), noise));
    const double qx = to_double(noisy_outcome_prob(spec, Basis::x(), noise));
    const double noisy_analytic = expected_consumption_from_rates(2 * pz * (1 - pz), 2 * qx * (1 - qx), true);
    const double noisy_mean = protocol_run(spec, noise, n, tag(4, 1), options).mean_consumption();

    const double ideal_dev = std::abs(ideal_mean / analytic - 1.0);
    const double noisy_dev = std::abs(noisy_mean / noisy_analytic - 1.0);
    r.pass = analytic >= 18.0 && analytic <= 24.0 && std::abs(chain_cost - analytic) < 1e-12 && ideal_dev <= 0.02 &&
             noisy_dev <= 0.02;
    r.detail = fmt::format(
        "analytic {:.4f} quoins/f (chain oracle {:.4f}, in [18, 24]); ideal empirical {:.4f} ({:.2f}% off); "
        "default-noise empirical {:.4f} vs analytic {:.4f} ({:.2f}% off); N={}",
        analytic, chain_cost, ideal_mean, 100 * ideal_dev, noisy_mean, noisy_analytic, 100 * noisy_dev, n);
  });
}

CriterionResult check_bound_arithmetic(const AcceptanceOptions&) {
  return guarded(5, "tail-bound coin budget", [](CriterionResult& r) {
    const auto budget = np_min_n(0.0175);
    const double n_dev = std::abs(budget.approximation / 1.9e4 - 1.0);
    const double cost_dev = std::abs(2.0 * budget.approximation / 3.8e4 - 1.0);
    r.pass = n_dev <= 0.05 && cost_dev <= 0.05;
    r.detail = fmt::format(
        "approximation n={:.1f} ({:.2f}% from 1.9e4); 2n={:.1f} ({:.2f}% from 3.8e4); smallest n with bound <= 1: {}",
        budget.approximation, 100 * n_dev, 2 * budget.approximation, 100 * cost_dev, budget.exact);
  });
}

CriterionResult check_epsilon_relation(const AcceptanceOptions&) {
  return guarded(6, "eps1/eps3 relation", [](CriterionResult& r) {
    const ExactProb tolerance("1e-45");
    bool exact = true;
    bool wired = true;
    for (const char* text : {"0.001", "0.01", "0.035", "0.04", "0.1", "0.25", "0.49"}) {
      const ExactProb eps1(text);
      const ExactProb eps3 = eps3_from_eps1(eps1);
      const ExactProb lhs = 1 - eps3;
      const ExactProb rhs = (1 + sqrt(1 - eps1)) / 2;
      exact = exact && abs(lhs - rhs) < tolerance && abs(eps1_from_eps3(eps3) - eps1) < tolerance;
      // The q_t construction saturates at exactly 1 - eps3.
      const double e1 = to_double(eps1);
      wired = wired && std::abs(classical_qt_target(0.5, e1) - (1.0 - eps3_from_eps1(e1))) < 1e-15;
    }
    const ExactProb eps3 = eps3_from_eps1(ExactProb("0.04"));
    const double eps3_d = to_double(eps3);
    const bool rounds = std::abs(eps3_d - 0.01) < 0.005;
    r.pass = exact && wired && rounds;
    r.detail = fmt::format(
        "relation holds to 1e-45 on 7 values: {}; q_t saturation equals 1-eps3: {}; eps1=0.04 -> eps3={:.10f} "
        "(0.01 to two decimals: {}); exact inverse of eps3=0.01 is eps1={:.4f}",
        exact ? "yes" : "no", wired ? "yes" : "no", eps3_d, rounds ? "yes" : "no",
        to_double(eps1_from_eps3(ExactProb("0.01"))));
  });
}

CriterionResult check_oracle_suite(const AcceptanceOptions& options) {
  return guarded(7, "oracle equivalence suite", [&](CriterionResult& r) {
    const std::array<Rational, 6> grid = {Rational(1, 10), Rational(1, 4), Rational(1, 3),
                                          Rational(1, 2), Rational(2, 3), Rational(9, 10)};
    constexpr std::uint64_t kCheap = 1'000'000;
    constexpr std::uint64_t kHeavy = 100'000;
    const double eps1_ft = 0.035;
    const double eps1_qt = 0.04;
    const TruncatedDoublingEnvelope double_env(0.0175);
    const ExactProb close("1e-40");
    const auto seed = options.seed;

    std::vector<SuitePoint> points;
    std::uint32_t item = 0;
    const auto add = [&](const std::string& name, double p, const ExactProb& oracle_value, const ExactProb& closed,
                         const OutputTally& tally) {
      SuitePoint point{name, p, to_double(oracle_value), tally.estimate(), abs(oracle_value - closed) < close, false};
      point.pass = point.oracle_agrees && tally.cutoffs == 0 && z_test(point.est, point.oracle, kSigmas).pass;
      points.push_back(point);
    };

    for (const Rational& pr : grid) {
      const double p = to_double(to_exact(pr));
      const ExactProb pe = to_exact(pr);
      const Rational m = 2 * pr * (1 - pr);
      const Rational n = Rational(1, 2) - m;

      add("diff", p, to_exact(oracle::diff(pr).head), to_exact(m),
          sample_bits(kCheap, tag(7, item++), options.workers, [&](std::uint64_t stream) {
            return as_bits(std::make_unique<DiffState>(DiffState{BiasedSource(p, seed, stream)}));
          }));

      add("von_neumann", p, to_exact(oracle::von_neumann(pr).head), ExactProb(1) / 2,
          sample_bits(kCheap, tag(7, item++), options.workers, [&](std::uint64_t stream) {
            return as_bits(std::make_unique<VonNeumannState>(VonNeumannState{BiasedSource(p, seed, stream)}));
          }));

      const auto race_law = oracle::race(m, Rational(2), true);
      add("race", p, to_exact(race_law.head), to_exact(m / (m + 1)),
          sample_bits(kCheap, tag(7, item++), options.workers,
                      [&](std::uint64_t stream) { return as_bits(std::make_unique<RaceState>(p, seed, stream)); }));

      const auto ratio_law = oracle::ratio(race_law, oracle::race(n, Rational(1), true));
      const double n_d = to_double(to_exact(n));
      add("ratio", p, to_exact(ratio_law.head), to_exact(m / (m + n)),
          sample_bits(kCheap, tag(7, item++), options.workers, [&](std::uint64_t stream) {
            return as_bits(std::make_unique<RatioState>(p, n_d, seed, stream));
          }));

      add("sqrt", p, sqrt(pe), sqrt(pe),
          sample_bits(kCheap, tag(7, item++), options.workers,
                      [&](std::uint64_t stream) { return as_bits(std::make_unique<SqrtState>(p, seed, stream)); }));

      const ExactProb double_target = std::min<ExactProb>(2 * pe, 1 - 2 * ExactProb("0.0175"));
      add("truncated_double", p, double_target, double_target,
          sample_bits(kHeavy, tag(7, item++), options.workers, [&](std::uint64_t stream) {
            return as_bits(std::make_unique<DoubleState>(p, double_env, seed, stream));
          }));

      const ExactProb ft_target = std::min<ExactProb>(4 * pe * (1 - pe), 1 - ExactProb("0.035"));
      add("classical_ft", p, ft_target, ft_target,
          sample_pipeline(
              [&](std::uint64_t stream) {
                return FactoryPipeline::classical_ft(p, eps1_ft, PipelineOptions{}, seed, stream);
              },
              kHeavy, tag(7, item++), options.workers));

      const ExactProb qt_target = (1 + sqrt(std::min<ExactProb>(4 * pe * (1 - pe), 1 - ExactProb("0.04")))) / 2;
      add("classical_qt", p, qt_target, qt_target,
          sample_pipeline(
              [&](std::uint64_t stream) {
                return FactoryPipeline::classical_qt(p, eps1_qt, PipelineOptions{}, seed, stream);
              },
              kHeavy, tag(7, item++), options.workers));
    }

    int passed = 0;
    std::string misses;
    for (const auto& point : points) {
      if (point.pass) {
        ++passed;
      } else {
        misses += fmt::format(" {}@p={:.4f}(hat={:.5f},oracle={:.5f})", point.combinator, point.p, point.est.p_hat,
                              point.oracle);
      }
    }

    // Default-noise protocol at the remaining angles of the results table:
    // f_hat should lie between the truncated model min{f, 0.965} and the ideal
    // curve f, both evaluated at the measured p_hat as in the table.
    const NoiseModel noise;
    int band_ok = 0;
    int band_total = 0;
    int fold_ok = 0;
    std::string band_misses;
    for (std::uint32_t i = 0; i < kResultsTable.size(); ++i) {
      const double degrees = kResultsTable[i].theta_deg;
      if (degrees == 90) {
        continue;
      }
      ++band_total;
      const auto spec = QuoinSpec::from_degrees(degrees);
      const auto p_hat =
          sample_quoins(spec, Basis::z(), noise, kCheap, seed, tag(7, 0x800 + i), options.workers).estimate();
      const auto f_hat = protocol_run(spec, noise, kHeavy, tag(7, 0x900 + i), options).estimate();
      const double ideal = 4 * p_hat.p_hat * (1 - p_hat.p_hat);
      const double truncated = std::min(ideal, 1.0 - eps1_ft);
      const double curve_sigma = std::abs(4 * (1 - 2 * p_hat.p_hat)) * p_hat.std_err;
      const double slack = kSigmas * std::hypot(binomial_sigma(f_hat.p_hat, f_hat.n_samples), curve_sigma);
      // The same output against the closed-form fold of the noise model.
      const double pz = to_double(noisy_outcome_prob(spec, Basis::z(), noise));
      const double qx = to_double(noisy_outcome_prob(spec, Basis::x(), noise));
      const double m = 2 * pz * (1 - pz);
      const double n = 2 * qx * (1 - qx);
      fold_ok += z_test(f_hat, m / (m + n), kSigmas).pass ? 1 : 0;
      if (f_hat.p_hat >= truncated - slack && f_hat.p_hat <= ideal + slack) {
        ++band_ok;
      } else {
        band_misses += fmt::format(" {:g}deg(f_hat={:.4f},band=[{:.4f},{:.4f}])", degrees, f_hat.p_hat, truncated, ideal);
      }
    }

    r.pass = passed == static_cast<int>(points.size()) && band_ok == band_total && fold_ok == band_total;
    r.detail = fmt::format(
        "{}/{} combinator points within 4 sigma of the oracle; {}/{} noisy angles match the analytic noise fold; "
        "{}/{} noisy angles inside the band between min{{f, 0.965}} and f at p_hat",
        passed, points.size(), fold_ok, band_total, band_ok, band_total);
    if (!misses.empty()) {
      r.detail += "; combinator misses:" + misses;
    }
    if (!band_misses.empty()) {
      r.detail += "; outside band:" + band_misses;
    }
  });
}

CriterionResult check_standard_error(const AcceptanceOptions& options) {
  return guarded(8, "standard error at 2e7 quoins", [&](CriterionResult& r) {
    constexpr std::uint64_t n = 20'000'000;
    const auto est =
        sample_quoins(QuoinSpec::from_degrees(90), Basis::z(), NoiseModel{}, n, options.seed, tag(8, 0), options.workers)
            .estimate();
    const double binomial = std::sqrt(est.p_hat * (1 - est.p_hat) / static_cast<double>(n));
    r.pass = est.std_err >= 0.5e-4 && est.std_err <= 2e-4 && std::abs(est.std_err / binomial - 1) < 1e-12;
    r.detail = fmt::format("p_hat={:.5f}, std_err={:.3e} at N={} (order 1e-4: {})", est.p_hat, est.std_err, n,
                           r.pass ? "yes" : "no");
  });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  return {check_theory_table(options),    check_ideal_protocol(options),   check_noisy_reproduction(options),
          check_consumption(options),     check_bound_arithmetic(options), check_epsilon_relation(options),
          check_oracle_suite(options),    check_standard_error(options)};
}

std::string format_result(const CriterionResult& result) {
  return fmt::format("{} [{}] {}: {}", result.pass ? "PASS" : "FAIL", result.id, result.name, result.detail);
}

}  // namespace quoin
