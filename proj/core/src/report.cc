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

#include "quoin/report.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <json.hpp>

namespace quoin {
namespace {

using nlohmann::ordered_json;

std::string prob(double v) { return fmt::format("{:.6f}", v); }

ordered_json estimate_json(const BiasEstimate& e) {
  return {{"n", e.n_samples}, {"heads", e.heads}, {"p_hat", e.p_hat}, {"std_err", e.std_err}};
}

void dump(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << '\n'; }

void curve(std::ostream& out, bool& first, const std::string& name, const std::vector<std::pair<double, double>>& xy) {
  if (!first) {
    out << '\n';
  }
  first = false;
  out << "# " << name << '\n';
  for (const auto& [x, y] : xy) {
    fmt::print(out, "{:.6g} {:.6g}\n", x, y);
  }
}

}  // namespace

void write_csv(std::ostream& out, const SimulateReport& report) {
  out << kSimulateCsvHeader << '\n';
  for (const auto& r : report.rows) {
    fmt::print(out, "{:g},{},{},{},{},{},{},{},{:.4f}\n", r.theta_deg, prob(r.p.p_hat), r.p.n_samples,
               prob(r.theory.q_th), prob(r.q.p_hat), prob(r.theory.f_th), prob(r.f.p_hat), r.f.n_samples,
               r.mean_quoins_per_f);
  }
}

void write_csv(std::ostream& out, const ClassicalReport& report) {
  out << kClassicalCsvHeader << '\n';
  for (const auto& r : report.rows) {
    fmt::print(out, "{},{},{},{},{},{:.3e},{:.3f},{:.2f},{},{},{},{},{}\n", r.construction, prob(r.p), prob(r.target),
               r.bias.n_samples, prob(r.bias.p_hat), r.bias.std_err, r.z, r.mean_coins, r.median_coins, r.q90_coins,
               r.q99_coins, r.max_coins, r.cutoffs);
  }
}

void write_csv(std::ostream& out, const BoundsReport& report) {
  out << kBoundsCsvHeader << '\n';
  for (const auto& r : report.rows) {
    fmt::print(out, "grid,{:g},{:g},{:.6e}\n", r.eps1p, r.n, r.bound);
  }
  for (const auto& r : report.min_n) {
    fmt::print(out, "min_n,{:g},{},{:.6e}\n", r.eps1p, r.budget.exact,
               np_tail_bound({r.eps1p, static_cast<double>(r.budget.exact)}));
    fmt::print(out, "approximation,{:g},{:.1f},{:.6e}\n", r.eps1p, r.budget.approximation,
               np_tail_bound({r.eps1p, r.budget.approximation}));
  }
}

void write_json(std::ostream& out, const SimulateReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json per_step = ordered_json::object();
    for (const auto& [step, mean] : r.mean_per_step) {
      per_step[step] = mean;
    }
    rows.push_back({{"theta_deg", r.theta_deg},
                    {"p", estimate_json(r.p)},
                    {"q", estimate_json(r.q)},
                    {"q_th", r.theory.q_th},
                    {"f_th", r.theory.f_th},
                    {"f", estimate_json(r.f)},
                    {"mean_quoins_per_f", r.mean_quoins_per_f},
                    {"mean_per_step", per_step},
                    {"cutoffs", r.cutoffs},
                    {"purification_rejections", r.purification_rejections}});
  }
  dump(out, {{"mode", "simulate"}, {"seed", report.seed}, {"warnings", report.warnings}, {"rows", rows}});
}

void write_json(std::ostream& out, const ClassicalReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"construction", r.construction},
                    {"p", r.p},
                    {"target", r.target},
                    {"bias", estimate_json(r.bias)},
                    {"z", r.z},
                    {"coins", {{"mean", r.mean_coins},
                               {"median", r.median_coins},
                               {"q90", r.q90_coins},
                               {"q99", r.q99_coins},
                               {"max", r.max_coins}}},
                    {"cutoffs", r.cutoffs}});
  }
  dump(out, {{"mode", "classical"},
             {"seed", report.seed},
             {"eps1", report.eps1},
             {"eps1p", report.eps1p},
             {"warnings", report.warnings},
             {"rows", rows}});
}

void write_json(std::ostream& out, const BoundsReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"eps1p", r.eps1p}, {"n", r.n}, {"bound", r.bound}});
  }
  ordered_json min_n = ordered_json::array();
  for (const auto& r : report.min_n) {
    min_n.push_back({{"eps1p", r.eps1p},
                     {"exact", r.budget.exact},
                     {"approximation", r.budget.approximation},
                     {"ft_cost", r.ft_cost}});
  }
  dump(out, {{"mode", "bounds"}, {"rows", rows}, {"min_n", min_n}});
}

void write_plot(std::ostream& out, const SimulateReport& report) {
  std::vector<std::pair<double, double>> q_exp, q_th, f_exp, f_th;
  for (const auto& r : report.rows) {
    q_exp.emplace_back(r.p.p_hat, r.q.p_hat);
    q_th.emplace_back(r.p.p_hat, r.theory.q_th);
    f_exp.emplace_back(r.p.p_hat, r.f.p_hat);
    f_th.emplace_back(r.p.p_hat, r.theory.f_th);
  }
  bool first = true;
  curve(out, first, "q_exp vs p_hat", q_exp);
  curve(out, first, "q_th vs p_hat", q_th);
  curve(out, first, "f_exp vs p_hat", f_exp);
  curve(out, first, "f_th vs p_hat", f_th);
}

void write_plot(std::ostream& out, const ClassicalReport& report) {
  std::map<std::string, std::vector<std::pair<double, double>>> bias, target;
  for (const auto& r : report.rows) {
    bias[r.construction].emplace_back(r.p, r.bias.p_hat);
    target[r.construction].emplace_back(r.p, r.target);
  }
  bool first = true;
  for (const auto& [name, xy] : bias) {
    curve(out, first, name + " bias vs p", xy);
    curve(out, first, name + " target vs p", target[name]);
  }
}

void write_plot(std::ostream& out, const BoundsReport& report) {
  std::map<double, std::vector<std::pair<double, double>>> by_eps;
  for (const auto& r : report.rows) {
    by_eps[r.eps1p].emplace_back(r.n, r.bound);
  }
  bool first = true;
  for (const auto& [eps, xy] : by_eps) {
    curve(out, first, fmt::format("bound vs n (eps1p={:g})", eps), xy);
  }
}

}  // namespace quoin
