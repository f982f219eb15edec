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
#include "hardyweak_cli/commands.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "hardyweak/errors.hpp"
#include "hardyweak/hardy.hpp"
#include "hardyweak/pointer.hpp"
#include "hardyweak/report.hpp"
#include "hardyweak/stateprep.hpp"
#include "hardyweak/weakval.hpp"

namespace hardyweak::cli {

namespace {

using nlohmann::json;

struct Options {
  bool timestamp = false;

  std::string convention = "v-inner";
  std::string format = "json";
  std::string mode = "compare";
  std::string observable = "pv1";
  std::string pair = "vv";
  std::string post = "dark";
  double gamma = 1.0;
  double epsilon = 0.0;
  double sigma = 1.0;
  double strong_g = 20.0;
  std::vector<double> g_list = {0.2, 0.1, 0.05, 0.025};
};

// Usage errors raised after CLI11 has accepted the flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g_list_text(const std::vector<double>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + format_double(g[i]);
  return s;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void validate_g_list(const std::vector<double>& g) {
  if (g.size() < 3) throw UsageError("--g-list needs at least 3 values");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0) || !std::isfinite(g[i])) throw UsageError("--g-list values must be positive");
    if (i > 0 && !(g[i] < g[i - 1])) throw UsageError("--g-list must be strictly decreasing");
  }
}

void validate_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw UsageError("--sigma must be positive");
}

SpectralOperator projector_observable(const Operator& p) {
  return SpectralOperator({{1.0, p}, {0.0, Operator::identity(2) - p}});
}

// Post-selected state for --post: the dark-port pair or a computational
// basis pair (hh, hv, vh, vv).
Ket post_state(const std::string& which, const HardyScenario& s) {
  if (which == "dark") return s.post();
  static const std::map<std::string, std::size_t> index{{"hh", 0}, {"hv", 1}, {"vh", 2}, {"vv", 3}};
  return Ket::basis(4, index.at(which));
}

// --- text renderers -------------------------------------------------------

std::string table_tsv(const WeakValueTable& t) {
  std::ostringstream o;
  o << "photon1\\photon2\t" << t.labels[0] << '\t' << t.labels[1] << '\n';
  for (std::size_t i = 0; i < 2; ++i) {
    o << t.labels[i] << '\t' << format_double(t.joint[i][0]) << '\t' << format_double(t.joint[i][1]) << '\n';
  }
  return o.str();
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string table_text(const WeakValueTable& t, PathConvention c) {
  std::ostringstream o;
  o << "Joint weak values (convention " << to_string(c) << ", rows photon 1, columns photon 2)\n";
  o << pad("", 6) << pad(t.labels[0], 24) << t.labels[1] << '\n';
  for (std::size_t i = 0; i < 2; ++i) {
    o << pad(t.labels[i], 6) << pad(format_double(t.joint[i][0]), 24) << format_double(t.joint[i][1]) << '\n';
  }
  o << "marginals photon 1: " << t.labels[0] << ' ' << format_double(t.marginals_1[0]) << ", " << t.labels[1] << ' '
    << format_double(t.marginals_1[1]) << '\n';
  o << "marginals photon 2: " << t.labels[0] << ' ' << format_double(t.marginals_2[0]) << ", " << t.labels[1] << ' '
    << format_double(t.marginals_2[1]) << '\n';
  o << "total: " << format_double(t.total) << '\n';
  o << "post-selection probability: " << format_double(t.postselection_probability) << '\n';
  return o.str();
}

// --- commands -------------------------------------------------------------

json cmd_table(const Options& o, std::map<std::string, std::string>& p, std::string* text) {
  p["convention"] = o.convention;
  p["format"] = o.format;
  const PathConvention c = parse_convention(o.convention);
  const WeakValueTable t = weak_value_table(build_scenario(c));
  if (o.format == "tsv") *text = table_tsv(t);
  if (o.format == "text") *text = table_text(t, c);
  json payload = to_json(t);
  payload["convention"] = o.convention;
  return payload;
}

json cmd_prep(const Options& o, std::map<std::string, std::string>& p) {
  p["mode"] = o.mode;
  const Ket target = build_scenario().pre();
  json payload{{"mode", o.mode}};
  if (o.mode == "flawed") {
    payload["flawed"] = to_json(simulate_flawed_prep());
  } else if (o.mode == "correct") {
    payload["correct"] = to_json(simulate_correct_prep(target));
    payload["schmidt"] = to_json(schmidt_decompose(target));
  } else {
    const json cmp = to_json(compare_preps(target));
    for (const auto& [k, v] : cmp.items()) payload[k] = v;
  }
  return payload;
}

json cmd_pointer(const Options& o, std::map<std::string, std::string>& p) {
  p["observable"] = o.observable;
  p["gamma"] = format_double(o.gamma);
  p["epsilon"] = format_double(o.epsilon);
  p["sigma"] = format_double(o.sigma);
  p["g-list"] = g_list_text(o.g_list);
  p["post"] = o.post;
  validate_sigma(o.sigma);
  validate_g_list(o.g_list);

  const HardyScenario s = build_scenario();
  const PrePostEnsemble e(s.pre(), post_state(o.post, s));
  const int photon = o.observable.back() == '1' ? 0 : 1;
  SpectralOperator single = o.observable[1] == 'v' ? projector_observable(basis::proj_v())
                                                   : projector_observable(basis::proj_h());
  if (o.observable[0] == 'a') single = single_photon_observable(o.gamma, o.epsilon);

  json payload = to_json(estimate_single(e, lift(single, photon), o.sigma, o.g_list));
  payload["observable"] = o.observable;
  payload["photon"] = photon + 1;
  return payload;
}

json cmd_joint(const Options& o, std::map<std::string, std::string>& p) {
  p["pair"] = o.pair;
  p["sigma"] = format_double(o.sigma);
  p["g-list"] = g_list_text(o.g_list);
  p["post"] = o.post;
  validate_sigma(o.sigma);
  validate_g_list(o.g_list);

  const HardyScenario s = build_scenario();
  const PrePostEnsemble e(s.pre(), post_state(o.post, s));
  auto obs = [](char c) { return projector_observable(c == 'v' ? basis::proj_v() : basis::proj_h()); };
  json payload = to_json(estimate_joint(e, obs(o.pair[0]), obs(o.pair[1]), o.sigma, o.g_list));
  payload["pair"] = o.pair;
  return payload;
}

json cmd_strong(const Options& o, std::map<std::string, std::string>& p) {
  p["convention"] = o.convention;
  p["sigma"] = format_double(o.sigma);
  p["g"] = format_double(o.strong_g);
  validate_sigma(o.sigma);
  if (!(o.strong_g / o.sigma >= kStrongRegimeRatio)) throw UsageError("--g / --sigma must be at least 10");

  const HardyScenario s = build_scenario(parse_convention(o.convention));
  json payload = to_json(strong_comparison(s));
  const SpectralOperator obs[] = {s.single[0][0], s.single[1][0]};
  payload["pointer_readout"] = to_json(strong_regime(s.ensemble, obs, o.sigma, o.strong_g));
  payload["convention"] = o.convention;
  return payload;
}

json cmd_a12(const Options& o, std::map<std::string, std::string>& p) {
  p["convention"] = o.convention;
  p["gamma"] = format_double(o.gamma);
  p["epsilon"] = format_double(o.epsilon);
  return to_json(a12_analysis(build_scenario(parse_convention(o.convention)), o.gamma, o.epsilon));
}

json cmd_narrative(const Options& o, std::map<std::string, std::string>& p) {
  p["convention"] = o.convention;
  return ifm_narrative(build_scenario(parse_convention(o.convention)));
}

void add_convention(CLI::App* sub, Options& o) {
  sub->add_option("--convention", o.convention, "Polarization of the inner arm")
      ->check(CLI::IsMember({"v-inner", "h-inner"}))
      ->capture_default_str();
}

void add_g_list(CLI::App* sub, Options& o) {
  sub->add_option("--g-list", o.g_list, "Coupling strengths, comma separated, strictly decreasing")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--sigma", o.sigma, "Pointer width")->capture_default_str();
  sub->add_option("--post", o.post, "Post-selected state: dark-port pair or a basis pair")
      ->check(CLI::IsMember({"dark", "hh", "hv", "vh", "vv"}))
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weak values and pointer simulations for the two-photon Hardy interferometer", "hardyweak"};
  app.require_subcommand(1);
  app.add_flag("--timestamp", o.timestamp, "Add a UTC generation time to the report");

  CLI::App* table = app.add_subcommand("table", "Joint and single weak-value table");
  add_convention(table, o);
  table->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "tsv", "text"}))
      ->capture_default_str();

  CLI::App* prep = app.add_subcommand("prep", "Flawed versus Schmidt-based state preparation");
  prep->add_option("--mode", o.mode)->check(CLI::IsMember({"flawed", "correct", "compare"}))->capture_default_str();

  CLI::App* pointer = app.add_subcommand("pointer", "Single-pointer weak measurement estimate");
  pointer->add_option("--observable", o.observable)
      ->check(CLI::IsMember({"pv1", "ph1", "pv2", "ph2", "a1", "a2"}))
      ->capture_default_str();
  pointer->add_option("--gamma", o.gamma, "Eigenvalue of A_i on V")->capture_default_str();
  pointer->add_option("--epsilon", o.epsilon, "Eigenvalue of A_i on H")->capture_default_str();
  add_g_list(pointer, o);

  CLI::App* joint = app.add_subcommand("joint", "Two-pointer correlation estimate of a joint weak value");
  joint->add_option("--pair", o.pair)->check(CLI::IsMember({"vv", "hh", "vh", "hv"}))->capture_default_str();
  add_g_list(joint, o);

  CLI::App* strong = app.add_subcommand("strong", "Projective which-arm detectors versus weak values");
  add_convention(strong, o);
  strong->add_option("--sigma", o.sigma, "Pointer width")->capture_default_str();
  strong->add_option("--g", o.strong_g, "Coupling strength (at least 10 sigma)")->capture_default_str();

  CLI::App* a12 = app.add_subcommand("a12", "Vector operator A12 versus the joint weak value");
  add_convention(a12, o);
  a12->add_option("--gamma", o.gamma)->capture_default_str();
  a12->add_option("--epsilon", o.epsilon)->capture_default_str();

  CLI::App* narrative = app.add_subcommand("narrative", "Paradox statement with computed numbers");
  add_convention(narrative, o);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Report report;
  std::string text;
  try {
    CLI::App* sub = app.get_subcommands().front();
    report.command = sub->get_name();
    if (sub == table) report.payload = cmd_table(o, report.parameters, &text);
    if (sub == prep) report.payload = cmd_prep(o, report.parameters);
    if (sub == pointer) report.payload = cmd_pointer(o, report.parameters);
    if (sub == joint) report.payload = cmd_joint(o, report.parameters);
    if (sub == strong) report.payload = cmd_strong(o, report.parameters);
    if (sub == a12) report.payload = cmd_a12(o, report.parameters);
    if (sub == narrative) report.payload = cmd_narrative(o, report.parameters);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help("hardyweak");
    return kExitUsage;
  } catch (const OrthogonalPostSelection& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }

  if (!text.empty()) {
    out << text;
    return kExitOk;
  }
  json doc = report.to_json();
  if (o.timestamp) doc["timestamp"] = utc_now();
  out << dump_deterministic(doc) << '\n';
  return kExitOk;
}

}  // namespace hardyweak::cli
