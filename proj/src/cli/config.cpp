// Copyright 2026 The nullwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "nullwave/cli/config.hpp"
#include "nullwave/error.hpp"

namespace nullwave::cli {

using nlohmann::json;

bool is_experiment(const std::string& name) noexcept {
  return std::find(std::begin(kExperiments), std::end(kExperiments), name) != std::end(kExperiments);
}

ConfigError::ConfigError(int line, std::string field, const std::string& what)
    : std::runtime_error("config error" + (line > 0 ? " at line " + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ", field " + field) + ": " + what),
      line_(line),
      field_(std::move(field)) {}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Walks the pointer's object keys through the raw text. Array steps are
// skipped, so the result is the line of the innermost named key.
int locate(const std::string& text, const std::string& pointer) {
  std::size_t pos = 0;
  bool found = false;
  std::size_t start = 1;
  while (start <= pointer.size()) {
    const std::size_t end = std::min(pointer.find('/', start), pointer.size());
    const std::string token = pointer.substr(start, end - start);
    start = end + 1;
    if (token.empty() || std::all_of(token.begin(), token.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      continue;
    const std::size_t hit = text.find('"' + token + '"', pos);
    if (hit == std::string::npos) break;
    pos = hit + 1;
    found = true;
  }
  return found ? line_of_offset(text, pos) : 0;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    throw ConfigError(locate(text_, pointer), pointer.empty() ? "/" : pointer, what);
  }

  void allow_keys(const json& object, const std::string& pointer, std::initializer_list<const char*> keys) const {
    if (!object.is_object()) fail(pointer, "expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : object.items()) {
      if (!allowed.count(item.key())) fail(pointer + "/" + item.key(), "unknown key");
    }
  }

  double number(const json& value, const std::string& pointer) const {
    if (!value.is_number()) fail(pointer, "expected a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) fail(pointer, "expected a finite number");
    return v;
  }

  double positive(const json& value, const std::string& pointer) const {
    const double v = number(value, pointer);
    if (!(v > 0.0)) fail(pointer, "must be > 0");
    return v;
  }

  double nonnegative(const json& value, const std::string& pointer) const {
    const double v = number(value, pointer);
    if (v < 0.0) fail(pointer, "must be >= 0");
    return v;
  }

  int integer(const json& value, const std::string& pointer, int lo, int hi) const {
    if (!value.is_number_integer()) fail(pointer, "expected an integer");
    const auto v = value.get<long long>();
    if (v < lo || v > hi) fail(pointer, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
  }

  bool boolean(const json& value, const std::string& pointer) const {
    if (!value.is_boolean()) fail(pointer, "expected true or false");
    return value.get<bool>();
  }

  const json& array(const json& value, const std::string& pointer, std::size_t min_size = 0) const {
    if (!value.is_array()) fail(pointer, "expected an array");
    if (value.size() < min_size) fail(pointer, "expected at least " + std::to_string(min_size) + " entries");
    return value;
  }

  geometry::Interval interval(const json& value, const std::string& pointer) const {
    array(value, pointer);
    if (value.size() != 2) fail(pointer, "expected [lo, hi]");
    const double lo = number(value[0], pointer + "/0");
    const double hi = number(value[1], pointer + "/1");
    if (!(lo < hi)) fail(pointer, "expected lo < hi");
    return {lo, hi};
  }

 private:
  const std::string& text_;
};

void read_system(const Reader& r, const json& sys, ExperimentConfig& cfg) {
  r.allow_keys(sys, "/system", {"p", "speeds", "coupling"});
  if (!sys.contains("speeds")) r.fail("/system", "missing \"speeds\"");
  const auto& sp = r.array(sys["speeds"], "/system/speeds", 1);
  std::vector<double> speeds;
  for (std::size_t i = 0; i < sp.size(); ++i) speeds.push_back(r.number(sp[i], "/system/speeds/" + std::to_string(i)));
  const int p = static_cast<int>(speeds.size());
  if (sys.contains("p") && r.integer(sys["p"], "/system/p", 1, 1 << 20) != p)
    r.fail("/system/p", "does not match the number of speeds (" + std::to_string(p) + ")");

  cfg.coupling.clear();
  if (sys.contains("coupling")) {
    const auto& co = r.array(sys["coupling"], "/system/coupling");
    for (std::size_t n = 0; n < co.size(); ++n) {
      const std::string at = "/system/coupling/" + std::to_string(n);
      r.array(co[n], at);
      if (co[n].size() != 4) r.fail(at, "expected [i, j, k, value] with 1-based indices");
      core::CouplingEntry e;
      e.i = r.integer(co[n][0], at + "/0", 1, p) - 1;
      e.j = r.integer(co[n][1], at + "/1", 1, p) - 1;
      e.k = r.integer(co[n][2], at + "/2", 1, p) - 1;
      e.value = r.number(co[n][3], at + "/3");
      cfg.coupling.push_back(e);
    }
  }
  try {
    cfg.system = core::SystemSpec::from_triplets(speeds, cfg.coupling);
  } catch (const Error& e) {
    r.fail("/system/coupling", e.what());
  }
}

void read_data(const Reader& r, const json& data, ExperimentConfig& cfg) {
  r.array(data, "/data");
  if (static_cast<int>(data.size()) != cfg.system.p())
    r.fail("/data", "expected one breakpoint list per component (" + std::to_string(cfg.system.p()) + ")");
  cfg.data.clear();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::string at = "/data/" + std::to_string(i);
    r.array(data[i], at);
    std::vector<fields::Breakpoint> points;
    for (std::size_t n = 0; n < data[i].size(); ++n) {
      const std::string bp = at + "/" + std::to_string(n);
      r.array(data[i][n], bp);
      if (data[i][n].size() != 2) r.fail(bp, "expected [x, value]");
      points.push_back({r.number(data[i][n][0], bp + "/0"), r.number(data[i][n][1], bp + "/1")});
    }
    try {
      cfg.data.push_back(fields::InitialDatum::from_breakpoints(std::move(points)));
    } catch (const Error& e) {
      r.fail(at, e.what());
    }
  }
}

void read_tolerances(const Reader& r, const json& tol, Tolerances& t) {
  r.allow_keys(tol, "/tolerances",
               {"picard", "max_iter", "quadrature", "ratio_slack", "norm_identity", "riccati", "stability_slack",
                "glue_mismatch", "glue_consistency", "blowup_threshold", "divergence_factor", "wave_ratio",
                "wave_control_floor"});
  auto pos = [&](const char* key, double& out) {
    if (tol.contains(key)) out = r.positive(tol[key], std::string("/tolerances/") + key);
  };
  auto nonneg = [&](const char* key, double& out) {
    if (tol.contains(key)) out = r.nonnegative(tol[key], std::string("/tolerances/") + key);
  };
  pos("picard", t.picard);
  if (tol.contains("max_iter")) t.max_iter = r.integer(tol["max_iter"], "/tolerances/max_iter", 1, 100000);
  nonneg("quadrature", t.quadrature);
  nonneg("ratio_slack", t.ratio_slack);
  nonneg("norm_identity", t.norm_identity);
  nonneg("riccati", t.riccati);
  nonneg("stability_slack", t.stability_slack);
  nonneg("glue_mismatch", t.glue_mismatch);
  nonneg("glue_consistency", t.glue_consistency);
  pos("blowup_threshold", t.blowup_threshold);
  pos("divergence_factor", t.divergence_factor);
  nonneg("wave_control_floor", t.wave_control_floor);
  if (tol.contains("wave_ratio")) {
    const auto range = r.interval(tol["wave_ratio"], "/tolerances/wave_ratio");
    t.wave_ratio_lo = range.lo;
    t.wave_ratio_hi = range.hi;
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), "", "invalid JSON");
  }
  const Reader r(text);
  r.allow_keys(doc, "",
               {"experiment", "system", "data", "grid", "tolerances", "seed", "perturbation", "partition",
                "estimates", "wave_bridge", "blowup", "output", "description"});

  ExperimentConfig cfg;
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_string()) r.fail("/experiment", "expected a string");
    cfg.experiment = doc["experiment"].get<std::string>();
  }
  if (overrides.experiment) cfg.experiment = *overrides.experiment;
  if (cfg.experiment.empty()) r.fail("/experiment", "no experiment given");
  if (!is_experiment(cfg.experiment)) r.fail("/experiment", "unknown experiment \"" + cfg.experiment + "\"");

  if (!doc.contains("system")) r.fail("", "missing \"system\"");
  read_system(r, doc["system"], cfg);
  if (!doc.contains("data")) r.fail("", "missing \"data\"");
  read_data(r, doc["data"], cfg);

  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    r.allow_keys(g, "/grid", {"dx", "dt", "horizon", "padding"});
    if (g.contains("dx")) cfg.grid.dx = r.positive(g["dx"], "/grid/dx");
    if (g.contains("dt")) cfg.grid.dt = r.positive(g["dt"], "/grid/dt");
    if (g.contains("horizon")) cfg.grid.horizon = r.positive(g["horizon"], "/grid/horizon");
    if (g.contains("padding")) cfg.grid.padding = r.nonnegative(g["padding"], "/grid/padding");
  }
  if (overrides.dx) {
    if (!(*overrides.dx > 0.0) || !std::isfinite(*overrides.dx)) throw ConfigError(0, "--dx", "must be > 0");
    cfg.grid.dx = *overrides.dx;
  }
  if (overrides.dt) {
    if (!(*overrides.dt > 0.0) || !std::isfinite(*overrides.dt)) throw ConfigError(0, "--dt", "must be > 0");
    cfg.grid.dt = *overrides.dt;
  }

  if (doc.contains("tolerances")) read_tolerances(r, doc["tolerances"], cfg.tolerances);

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0))
      r.fail("/seed", "expected a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (overrides.seed) cfg.seed = *overrides.seed;

  if (doc.contains("perturbation")) {
    const auto& s = doc["perturbation"];
    r.allow_keys(s, "/perturbation", {"component", "l1"});
    Perturbation pert;
    if (s.contains("component"))
      pert.component = r.integer(s["component"], "/perturbation/component", 1, cfg.system.p()) - 1;
    if (s.contains("l1")) pert.l1 = r.positive(s["l1"], "/perturbation/l1");
    cfg.perturbation = pert;
  }

  if (doc.contains("partition")) {
    const auto& parts = r.array(doc["partition"], "/partition", 1);
    for (std::size_t n = 0; n < parts.size(); ++n)
      cfg.partition.push_back(r.interval(parts[n], "/partition/" + std::to_string(n)));
  }

  if (doc.contains("estimates")) {
    const auto& s = doc["estimates"];
    r.allow_keys(s, "/estimates", {"support", "samples", "lemma1_samples", "max_breaks", "bumps"});
    auto& e = cfg.estimates;
    if (s.contains("support")) e.support = r.interval(s["support"], "/estimates/support");
    if (s.contains("samples")) e.samples = r.integer(s["samples"], "/estimates/samples", 0, 1000000);
    if (s.contains("lemma1_samples"))
      e.lemma1_samples = r.integer(s["lemma1_samples"], "/estimates/lemma1_samples", 0, 1000000);
    if (s.contains("max_breaks")) e.max_breaks = r.integer(s["max_breaks"], "/estimates/max_breaks", 1, 1000);
    if (s.contains("bumps")) e.bumps = r.integer(s["bumps"], "/estimates/bumps", 0, 1000);
  }

  if (doc.contains("wave_bridge")) {
    const auto& s = doc["wave_bridge"];
    r.allow_keys(s, "/wave_bridge", {"control", "refinements"});
    if (s.contains("control")) {
      const auto& c = s["control"];
      r.allow_keys(c, "/wave_bridge/control", {"alpha", "beta"});
      ControlConfig control;
      if (c.contains("alpha")) control.alpha = r.number(c["alpha"], "/wave_bridge/control/alpha");
      if (c.contains("beta")) control.beta = r.number(c["beta"], "/wave_bridge/control/beta");
      cfg.wave_bridge.control = control;
    }
    if (s.contains("refinements"))
      cfg.wave_bridge.refinements = r.integer(s["refinements"], "/wave_bridge/refinements", 1, 6);
  }

  if (doc.contains("blowup")) {
    const auto& s = doc["blowup"];
    r.allow_keys(s, "/blowup", {"horizon", "expect_blow_up", "t_detect_range"});
    if (s.contains("horizon")) cfg.blowup.horizon = r.positive(s["horizon"], "/blowup/horizon");
    if (s.contains("expect_blow_up")) cfg.blowup.expect_blow_up = r.boolean(s["expect_blow_up"], "/blowup/expect_blow_up");
    if (s.contains("t_detect_range")) {
      const auto range = r.interval(s["t_detect_range"], "/blowup/t_detect_range");
      cfg.blowup.t_detect_range = std::make_pair(range.lo, range.hi);
    }
  }

  if (doc.contains("output")) {
    const auto& s = doc["output"];
    r.allow_keys(s, "/output", {"field_stride", "fields"});
    if (s.contains("field_stride")) {
      const auto& st = r.array(s["field_stride"], "/output/field_stride");
      if (st.size() != 2) r.fail("/output/field_stride", "expected [stride_x, stride_t]");
      cfg.output.field_stride_x = r.integer(st[0], "/output/field_stride/0", 1, 1 << 30);
      cfg.output.field_stride_t = r.integer(st[1], "/output/field_stride/1", 1, 1 << 30);
    }
    if (s.contains("fields")) cfg.output.fields = r.boolean(s["fields"], "/output/fields");
  }

  if (cfg.experiment == "stability" && !cfg.perturbation) cfg.perturbation = Perturbation{};
  if (cfg.experiment == "wave-bridge" && cfg.system.p() != 2)
    r.fail("/system/speeds", "wave-bridge needs a 2x2 system");
  if (cfg.experiment == "glue" && cfg.partition.empty()) r.fail("/partition", "glue needs a partition");
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

json resolved_config(const ExperimentConfig& cfg) {
  json out;
  out["experiment"] = cfg.experiment;
  json coupling = json::array();
  for (const auto& e : cfg.coupling) coupling.push_back({e.i + 1, e.j + 1, e.k + 1, e.value});
  out["system"] = {{"p", cfg.system.p()},
                   {"speeds", std::vector<double>(cfg.system.speeds().begin(), cfg.system.speeds().end())},
                   {"coupling", coupling}};
  json data = json::array();
  for (const auto& d : cfg.data) {
    json points = json::array();
    for (const auto& bp : d.breakpoints()) points.push_back({bp.x, bp.value});
    data.push_back(points);
  }
  out["data"] = data;
  out["grid"] = {{"dx", cfg.grid.dx}, {"dt", cfg.grid.dt}, {"padding", cfg.grid.padding}};
  out["grid"]["horizon"] = cfg.grid.horizon ? json(*cfg.grid.horizon) : json(nullptr);
  const auto& t = cfg.tolerances;
  out["tolerances"] = {{"picard", t.picard},
                       {"max_iter", t.max_iter},
                       {"quadrature", t.quadrature},
                       {"ratio_slack", t.ratio_slack},
                       {"norm_identity", t.norm_identity},
                       {"riccati", t.riccati},
                       {"stability_slack", t.stability_slack},
                       {"glue_mismatch", t.glue_mismatch},
                       {"glue_consistency", t.glue_consistency},
                       {"blowup_threshold", t.blowup_threshold},
                       {"divergence_factor", t.divergence_factor},
                       {"wave_ratio", {t.wave_ratio_lo, t.wave_ratio_hi}},
                       {"wave_control_floor", t.wave_control_floor}};
  out["seed"] = cfg.seed;
  if (cfg.perturbation) out["perturbation"] = {{"component", cfg.perturbation->component + 1}, {"l1", cfg.perturbation->l1}};
  if (!cfg.partition.empty()) {
    json parts = json::array();
    for (const auto& iv : cfg.partition) parts.push_back({iv.lo, iv.hi});
    out["partition"] = parts;
  }
  const auto& e = cfg.estimates;
  out["estimates"] = {{"samples", e.samples},
                      {"lemma1_samples", e.lemma1_samples},
                      {"max_breaks", e.max_breaks},
                      {"bumps", e.bumps}};
  out["estimates"]["support"] = e.support ? json({e.support->lo, e.support->hi}) : json(nullptr);
  out["wave_bridge"] = {{"refinements", cfg.wave_bridge.refinements}};
  out["wave_bridge"]["control"] = cfg.wave_bridge.control
                                      ? json({{"alpha", cfg.wave_bridge.control->alpha},
                                              {"beta", cfg.wave_bridge.control->beta}})
                                      : json(nullptr);
  out["blowup"] = json::object();
  out["blowup"]["horizon"] = cfg.blowup.horizon ? json(*cfg.blowup.horizon) : json(nullptr);
  out["blowup"]["expect_blow_up"] = cfg.blowup.expect_blow_up ? json(*cfg.blowup.expect_blow_up) : json(nullptr);
  out["blowup"]["t_detect_range"] = cfg.blowup.t_detect_range
                                        ? json({cfg.blowup.t_detect_range->first, cfg.blowup.t_detect_range->second})
                                        : json(nullptr);
  out["output"] = {{"field_stride", {cfg.output.field_stride_x, cfg.output.field_stride_t}},
                   {"fields", cfg.output.fields}};
  return out;
}

std::string resolved_config_json(const ExperimentConfig& config) { return resolved_config(config).dump(2); }

}  // namespace nullwave::cli
