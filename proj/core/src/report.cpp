// Copyright 2026 The hardyweak Authors
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

#include "hardyweak/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

namespace hardyweak {

using nlohmann::json;

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void write_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings only.
  out += json(s).dump();
}

void write(std::string& out, const json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      // nlohmann::json objects are std::map-backed: iteration is key-sorted.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += pretty ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

json path_matrix(const PathMatrix<double>& m) {
  return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})});
}

json labelled_pairs(const std::array<std::string, 2>& labels, const PathMatrix<double>& m) {
  json out = json::object();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out[labels[i] + labels[j]] = m[i][j];
  }
  return out;
}

json fit_json(const ConvergenceFit& fit) {
  json out;
  out["exact"] = fit.exact();
  out["order"] = fit.order ? json(*fit.order) : json(nullptr);
  out["points_used"] = fit.points_used;
  return out;
}

}  // namespace

std::string dump_deterministic(const json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

json Report::to_json() const {
  json params = json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  return json{{"command", command}, {"parameters", params}, {"payload", payload},
              {"schema_version", kReportSchemaVersion}};
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Ket& k) {
  json amps = json::array();
  for (cplx z : k.amps()) amps.push_back(to_json(z));
  json out{{"dim", k.dim()}, {"amps", amps}};
  if (!k.labels().empty()) out["basis_labels"] = k.labels();
  return out;
}

json to_json(const Operator& op) {
  json rows = json::array();
  for (std::size_t i = 0; i < op.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < op.dim(); ++j) row.push_back(to_json(op(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const DensityMatrix& rho) { return to_json(rho.op()); }

json to_json(const WeakValueTable& t) {
  json marginals;
  marginals["photon1"] = {{t.labels[0], t.marginals_1[0]}, {t.labels[1], t.marginals_1[1]}};
  marginals["photon2"] = {{t.labels[0], t.marginals_2[0]}, {t.labels[1], t.marginals_2[1]}};
  return json{{"labels", t.labels},
              {"joint", path_matrix(t.joint)},
              {"joint_by_label", labelled_pairs(t.labels, t.joint)},
              {"marginals", marginals},
              {"total", t.total},
              {"max_imag_residual", t.max_imag_residual},
              {"postselection_probability", t.postselection_probability}};
}

json to_json(const A12Report& r) {
  json factors = json::array();
  for (std::size_t c = 0; c < 2; ++c) {
    factors.push_back({{"acts_on_photon", r.component_photons[c] + 1},
                       {"eigenvalue_inner", r.factor_eigenvalues[c][0]},
                       {"eigenvalue_outer", r.factor_eigenvalues[c][1]}});
  }
  return json{{"gamma", r.gamma},
              {"epsilon", r.epsilon},
              {"decomposition_residual", r.decomposition_residual},
              {"factors", factors},
              {"vector_weak_value", json::array({to_json(r.vector_weak_value[0]), to_json(r.vector_weak_value[1])})},
              {"single_weak_values",
               {{"A2", to_json(r.single_weak_values[0])}, {"A1", to_json(r.single_weak_values[1])}}},
              {"joint_weak_value_inner_inner", r.joint_inner_inner},
              {"discrepancy", r.discrepancy},
              {"degenerate", r.degenerate}};
}

json to_json(const StrongComparison& c) {
  return json{{"strong_conditionals", path_matrix(c.strong_conditionals)},
              {"strong_conditionals_by_label", labelled_pairs(c.weak_table.labels, c.strong_conditionals)},
              {"weak_table", to_json(c.weak_table)},
              {"postselection_probability_strong", c.postselection_prob_strong},
              {"postselection_probability_weak", c.postselection_prob_weak}};
}

json to_json(const PreparationOutcome& o) {
  return json{{"state", to_json(o.state)},
              {"purity", o.purity},
              {"fidelity_with_target", o.fidelity_with_target},
              {"coherence_offdiag_max", o.coherence_offdiag_max}};
}

json to_json(const SchmidtForm& f) {
  return json{{"a", f.a},
              {"b", f.b},
              {"a_squared", f.a * f.a},
              {"b_squared", f.b * f.b},
              {"local_rotation_1", to_json(f.local_rotation_1)},
              {"local_rotation_2", to_json(f.local_rotation_2)},
              {"degenerate", f.degenerate},
              {"phase_convention", SchmidtForm::kPhaseConvention}};
}

json to_json(const PrepComparison& c) {
  json out{{"flawed", to_json(c.flawed)}, {"correct", to_json(c.correct)}, {"schmidt", to_json(c.schmidt)}};
  out["target_weak_joint"] = c.target_weak_joint ? path_matrix(*c.target_weak_joint) : json(nullptr);
  return out;
}

json to_json(const SingleEstimate& s) {
  json points = json::array();
  for (const SinglePoint& p : s.points) {
    points.push_back({{"g", p.g},
                      {"mean_x", p.mean_x},
                      {"mean_p", p.mean_p},
                      {"postselection_probability", p.postselection_probability},
                      {"estimate", to_json(p.estimate)},
                      {"abs_error", p.abs_error}});
  }
  return json{{"estimate", to_json(s.estimate)},
              {"analytic", to_json(s.analytic)},
              {"extrapolated_error", s.extrapolated_error},
              {"convergence", fit_json(s.fit)},
              {"points", points}};
}

json to_json(const JointEstimate& j) {
  json points = json::array();
  for (const JointPoint& p : j.points) {
    points.push_back({{"g", p.g},
                      {"raw_ratio", p.raw_ratio},
                      {"marginal_a", to_json(p.marginal_a)},
                      {"marginal_b", to_json(p.marginal_b)},
                      {"extracted", p.extracted}});
  }
  return json{{"raw_ratio", j.raw_ratio},
              {"extracted", j.extracted},
              {"analytic_joint", j.analytic_joint},
              {"analytic_raw_ratio", j.analytic_raw_ratio},
              {"points", points}};
}

json to_json(const StrongReadout& r) {
  json outcomes = json::array();
  for (const StrongOutcome& o : r.outcomes) {
    outcomes.push_back({{"eigenvalues", o.eigenvalues},
                        {"joint_probability", o.joint_probability},
                        {"conditional_probability", o.conditional_probability}});
  }
  return json{{"outcomes", outcomes},
              {"postselection_probability", r.postselection_probability},
              {"overlap_bound", r.overlap_bound}};
}

}  // namespace hardyweak
