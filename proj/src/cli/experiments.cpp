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

#include "nullwave/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json_io.hpp"
#include "nullwave/cli/report.hpp"
#include "nullwave/error.hpp"
#include "nullwave/solver/blowup.hpp"
#include "nullwave/solver/estimates.hpp"
#include "nullwave/solver/glue.hpp"
#include "nullwave/solver/riccati.hpp"
#include "nullwave/solver/stability.hpp"
#include "nullwave/solver/transport.hpp"
#include "nullwave/wave_bridge.hpp"

namespace nullwave::cli {

namespace fs = std::filesystem;
using fields::Grid;
using fields::GridField;
using fields::InitialDatum;
using geometry::Interval;
using geometry::TriangleDomain;
using nlohmann::json;

namespace {

json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::optional<Interval> data_hull(std::span<const InitialDatum> data) {
  std::optional<Interval> hull;
  for (const auto& d : data) {
    const auto s = d.support();
    if (!s) continue;
    hull = hull ? Interval{std::min(hull->lo, s->lo), std::max(hull->hi, s->hi)} : *s;
  }
  return hull;
}

double total_mass(std::span<const InitialDatum> data) {
  double e0 = 0.0;
  for (const auto& d : data) e0 += fields::datum_l1(d);
  return e0;
}

// The triangle over the data hull, when speeds are distinct and data nonzero.
std::optional<TriangleDomain> data_triangle(const ExperimentConfig& cfg) {
  const auto hull = data_hull(cfg.data);
  if (!hull || !cfg.system.has_distinct_speeds()) return std::nullopt;
  return geometry::triangle(*hull, cfg.system.speeds());
}

solver::GridSpacing spacing_of(const ExperimentConfig& cfg, double refine = 1.0) {
  return {cfg.grid.dx / refine, cfg.grid.dt / refine, cfg.grid.padding};
}

solver::PicardOptions picard_options(const ExperimentConfig& cfg) {
  solver::PicardOptions o;
  o.tol = cfg.tolerances.picard;
  o.max_iter = cfg.tolerances.max_iter;
  o.divergence_factor = cfg.tolerances.divergence_factor;
  return o;
}

// Grid and optional triangle for a Picard run up to the configured horizon.
// Norms are taken over D whenever the grid reaches its apex.
struct RunSetup {
  Grid grid;
  std::optional<TriangleDomain> domain;
  double horizon = 1.0;
};

RunSetup picard_setup(const ExperimentConfig& cfg, double refine = 1.0) {
  RunSetup s;
  const auto tri = data_triangle(cfg);
  s.horizon = cfg.grid.horizon.value_or(tri ? tri->t_star : 1.0);
  if (tri && s.horizon >= tri->t_star) s.domain = tri;
  s.grid = solver::cone_grid(data_hull(cfg.data).value_or(Interval{0.0, 1.0}), cfg.system.speeds(), s.horizon,
                             spacing_of(cfg, refine));
  return s;
}

json grid_json(const Grid& g) {
  return {{"x0", g.x0}, {"dx", g.dx}, {"nx", g.nx}, {"dt", g.dt}, {"nt", g.nt}};
}

json domain_json(const std::optional<TriangleDomain>& d) {
  if (!d) return nullptr;
  return {{"a", d->a}, {"b", d->b}, {"c_min", d->c_min}, {"c_max", d->c_max}, {"t_star", d->t_star}};
}

json budget_json(const core::ContractionBudget& b) {
  return {{"gamma", b.gamma},
          {"e0", b.e0},
          {"admissible", b.admissible},
          {"r_star", number_or_null(b.r_star)},
          {"r_max", number_or_null(b.r_max)},
          {"lipschitz", b.lipschitz},
          {"lipschitz_at_r_star", number_or_null(b.lipschitz_at_r_star)}};
}

json picard_json(const solver::PicardReport& r) {
  json its = json::array();
  for (const auto& rec : r.iterations) {
    its.push_back({{"m", rec.m},
                   {"alpha", rec.alpha},
                   {"r_measured", finite_or_null(rec.r_measured)},
                   {"diff_triple", finite_or_null(rec.diff_triple)},
                   {"ratio", number_or_null(rec.ratio)}});
  }
  json out = {{"verdict", std::string(solver::to_string(r.verdict))},
              {"iterations", its},
              {"budget", r.budget},
              {"k1_observed", finite_or_null(r.k1_observed)},
              {"e0", r.e0},
              {"eps", r.eps},
              {"gamma", number_or_null(r.gamma)},
              {"norms_on_triangle", r.norms_on_triangle},
              {"final_r", finite_or_null(r.final_r())}};
  out["first_bad_level"] = r.first_bad_level ? json(*r.first_bad_level) : json(nullptr);
  out["contraction"] = r.contraction ? budget_json(*r.contraction) : json(nullptr);
  return out;
}

json checks_json(const solver::PicardChecks& c) {
  return {{"applicable", c.applicable},
          {"budget_dominated", c.budget_dominated},
          {"contraction_bounded", c.contraction_bounded},
          {"k1_bounded", c.k1_bounded},
          {"below_r_star", c.below_r_star},
          {"max_ratio", c.max_ratio},
          {"worst_budget_excess", finite_or_null(c.worst_budget_excess)},
          {"k1_bound", c.k1_bound},
          {"all_hold", c.all_hold()}};
}

json check_json(const solver::EstimateCheck& c) {
  return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

class Output {
 public:
  Output(const ExperimentConfig& cfg, fs::path dir) : cfg_(cfg), dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_ / "tables", ec);
    if (!ec) fs::create_directories(dir_ / "fields", ec);
    if (ec) throw Error(ErrorCode::io, "cannot create " + dir_.string() + ": " + ec.message());
  }

  std::ofstream open(const fs::path& rel) const {
    std::ofstream out(dir_ / rel, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + (dir_ / rel).string());
    return out;
  }

  void convergence(const solver::PicardReport& r, const std::string& name = "convergence") const {
    auto out = open(fs::path("tables") / (name + ".csv"));
    emit_convergence_table(out, r);
  }

  void field(const GridField& f, const std::string& name) const {
    if (!cfg_.output.fields) return;
    const auto& g = f.grid();
    const int sx = cfg_.output.field_stride_x > 0 ? cfg_.output.field_stride_x : std::max(1, (g.nx + 99) / 100);
    const int st = cfg_.output.field_stride_t > 0 ? cfg_.output.field_stride_t : std::max(1, (g.nt + 99) / 100);
    auto out = open(fs::path("fields") / (name + ".csv"));
    fields::write_field_csv(out, f, name, sx, st);
  }

  void fields(std::span<const GridField> v, const std::string& prefix) const {
    for (std::size_t i = 0; i < v.size(); ++i) field(v[i], prefix + std::to_string(i + 1));
  }

 private:
  const ExperimentConfig& cfg_;
  fs::path dir_;
};

struct Result {
  json body = json::object();
  bool violated = false;
  std::string summary;
};

// ---------------------------------------------------------------------------

Result run_validate(const ExperimentConfig& cfg, const Output&) {
  Result res;
  const auto report = core::validate(cfg.system);
  json triples = json::array();
  for (const auto& t : report.resonant_triples) triples.push_back({t.i + 1, t.j + 1, t.k + 1});
  json groups = json::array();
  for (const auto& g : report.speed_multiplicities) {
    std::vector<int> comps;
    for (int c : g.components) comps.push_back(c + 1);
    groups.push_back({{"speed", g.speed}, {"components", comps}});
  }
  std::vector<double> eps;
  for (const auto& d : cfg.data) eps.push_back(fields::datum_l1(d));
  const double e0 = total_mass(cfg.data);
  const auto tri = data_triangle(cfg);
  res.body = {{"symmetric", report.symmetric},
              {"null_condition_holds", report.null_condition_holds},
              {"resonant_triples", triples},
              {"speed_multiplicities", groups},
              {"eps", eps},
              {"e0", e0},
              {"triangle", domain_json(tri)}};
  if (report.null_condition_holds) {
    const double g = core::gamma(cfg.system);
    const auto b = core::contraction_budget(g, e0);
    res.body["gamma"] = g;
    res.body["budget"] = budget_json(b);
    res.body["budget_sequence"] = core::budget_sequence(g, e0, 10);
    res.summary = "null condition holds, gamma " + fields::format_number(g) +
                  (b.admissible ? ", admissible" : ", budget inadmissible (4 gamma E0 >= 1)");
  } else {
    res.body["gamma"] = nullptr;
    res.body["budget"] = nullptr;
    res.summary = "resonant: " + std::to_string(report.resonant_triples.size()) + " triple(s) violate the null condition";
  }
  return res;
}

Result run_picard(const ExperimentConfig& cfg, const Output& out) {
  Result res;
  const auto setup = picard_setup(cfg);
  const auto run = solver::picard_solve(cfg.system, cfg.data, setup.domain, setup.grid, picard_options(cfg));
  const auto checks = solver::evaluate_checks(run.report, cfg.tolerances.quadrature, cfg.tolerances.ratio_slack);
  const auto validation = core::validate(cfg.system);

  res.body["grid"] = grid_json(setup.grid);
  res.body["horizon"] = setup.horizon;
  res.body["triangle"] = domain_json(setup.domain);
  res.body["report"] = picard_json(run.report);
  res.body["checks"] = checks_json(checks);

  json flags = json::array();
  if (!validation.null_condition_holds) flags.push_back("resonant");
  if (run.report.contraction && !run.report.contraction->admissible) flags.push_back("inadmissible_budget");
  res.body["flags"] = flags;

  if (!checks.all_hold()) res.violated = true;
  if (checks.applicable && run.report.verdict != solver::Verdict::converged) res.violated = true;

  // Scalar resonant mode has a closed-form solution.
  if (cfg.system.p() == 1 && cfg.system.coupling(0, 0, 0) != 0.0 && run.report.verdict == solver::Verdict::converged) {
    const double lambda = -cfg.system.coupling(0, 0, 0);
    const double c = cfg.system.speed(0);
    const auto& g = setup.grid;
    double err = 0.0;
    json oracle = {{"lambda", lambda}, {"t", g.t_end()}};
    try {
      for (int j = 0; j <= g.nx; ++j) {
        const double exact = solver::riccati_oracle(cfg.data[0], c, lambda, g.x(j), g.t_end());
        err = std::max(err, std::abs(run.fields[0].at(j, g.nt) - exact));
      }
      oracle["max_error"] = err;
      oracle["tolerance"] = cfg.tolerances.riccati;
      oracle["holds"] = err <= cfg.tolerances.riccati;
      if (!(err <= cfg.tolerances.riccati)) res.violated = true;
    } catch (const Error& e) {
      oracle["error"] = e.what();
      oracle["holds"] = false;
      res.violated = true;
    }
    res.body["riccati"] = oracle;
  } else if (cfg.system.p() == 1 && cfg.system.coupling(0, 0, 0) != 0.0) {
    res.violated = true;
  }

  out.convergence(run.report);
  out.fields(run.fields, "u");
  std::ostringstream s;
  s << solver::to_string(run.report.verdict) << " after " << run.report.iterations.size()
    << " iteration(s), sum alpha " << fields::format_number(run.report.final_r());
  for (const auto& f : flags) s << ", " << f.get<std::string>();
  res.summary = s.str();
  return res;
}

Result run_estimates(const ExperimentConfig& cfg, const Output&) {
  Result res;
  const auto& speeds = cfg.system.speeds();
  if (!cfg.system.has_distinct_speeds())
    throw Error(ErrorCode::precondition, "estimates need at least two distinct speeds");
  const auto hull = data_hull(cfg.data);
  const Interval support = cfg.estimates.support.value_or(hull.value_or(Interval{0.0, 1.0}));
  const auto domain = geometry::triangle(support, speeds);
  const auto grid = Grid::covering(support.padded(cfg.grid.padding), domain.t_star, cfg.grid.dx, cfg.grid.dt);
  const double qtol = cfg.tolerances.quadrature;
  const double itol = cfg.tolerances.norm_identity;
  const int p = cfg.system.p();
  const auto i_min = static_cast<int>(std::min_element(speeds.begin(), speeds.end()) - speeds.begin());
  const auto i_max = static_cast<int>(std::max_element(speeds.begin(), speeds.end()) - speeds.begin());

  res.body["grid"] = grid_json(grid);
  res.body["triangle"] = domain_json(domain);

  // Configured data, source-free.
  json reference = {{"lemma1", json::array()}, {"norm_equivalence", json::array()}, {"bilinear", json::array()}};
  for (int i = 0; i < p; ++i) {
    const solver::TransportPiece piece{nullptr, cfg.data[static_cast<std::size_t>(i)]};
    const auto l1 = solver::verify_lemma1(piece, speeds[static_cast<std::size_t>(i)], domain, grid, qtol);
    const auto ne = solver::verify_norm_equivalence(piece, speeds[static_cast<std::size_t>(i)], domain, grid, itol);
    reference["lemma1"].push_back(check_json(l1));
    reference["norm_equivalence"].push_back({{"residual_l1", ne.residual_l1},
                                             {"triple", ne.triple},
                                             {"eps", ne.eps},
                                             {"identity_defect", ne.identity_defect},
                                             {"holds", ne.holds}});
    res.violated |= !l1.holds || !ne.holds;
    for (int k = i + 1; k < p; ++k) {
      if (speeds[static_cast<std::size_t>(i)] == speeds[static_cast<std::size_t>(k)]) continue;
      const solver::TransportPiece other{nullptr, cfg.data[static_cast<std::size_t>(k)]};
      const auto bl = solver::verify_bilinear(piece, other, speeds[static_cast<std::size_t>(i)],
                                              speeds[static_cast<std::size_t>(k)], domain, grid, qtol);
      json entry = check_json(bl);
      entry["pair"] = {i + 1, k + 1};
      reference["bilinear"].push_back(entry);
      res.violated |= !bl.holds;
    }
  }
  res.body["reference"] = reference;

  solver::SampleGenerator gen(cfg.seed);
  const auto sweep = [&](int count, auto&& body) {
    json s = {{"samples", count}, {"failures", 0}, {"worst_ratio", 0.0}};
    int failures = 0;
    double worst = 0.0;
    for (int n = 0; n < count; ++n) {
      const auto check = body();
      if (!check.holds) ++failures;
      if (check.rhs > 0.0) worst = std::max(worst, check.lhs / check.rhs);
    }
    s["failures"] = failures;
    s["worst_ratio"] = worst;
    res.violated |= failures > 0;
    return s;
  };

  double worst_identity = 0.0;
  int identity_failures = 0;
  const auto identity = [&](const solver::TransportPiece& piece, double c) {
    const auto ne = solver::verify_norm_equivalence(piece, c, domain, grid, itol);
    worst_identity = std::max(worst_identity, ne.identity_defect);
    if (!ne.holds) ++identity_failures;
  };

  const auto& est = cfg.estimates;
  res.body["bilinear"] = sweep(est.samples, [&] {
    const auto fj = gen.source(grid, domain, est.bumps);
    const solver::TransportPiece vj{&fj, gen.datum(support, est.max_breaks)};
    const auto fk = gen.source(grid, domain, est.bumps);
    const solver::TransportPiece vk{&fk, gen.datum(support, est.max_breaks)};
    const double cj = speeds[static_cast<std::size_t>(i_min)];
    const double ck = speeds[static_cast<std::size_t>(i_max)];
    identity(vj, cj);
    identity(vk, ck);
    return solver::verify_bilinear(vj, vk, cj, ck, domain, grid, qtol);
  });
  res.body["bilinear"]["pair"] = {i_min + 1, i_max + 1};

  int component = 0;
  res.body["lemma1"] = sweep(est.lemma1_samples, [&] {
    const auto f = gen.source(grid, domain, est.bumps);
    const solver::TransportPiece v{&f, gen.datum(support, est.max_breaks)};
    const double c = speeds[static_cast<std::size_t>(component)];
    component = (component + 1) % p;
    identity(v, c);
    return solver::verify_lemma1(v, c, domain, grid, qtol);
  });

  res.body["norm_equivalence"] = {{"samples", 2 * est.samples + est.lemma1_samples},
                                  {"failures", identity_failures},
                                  {"worst_identity_defect", worst_identity},
                                  {"tolerance", itol}};
  res.violated |= identity_failures > 0;

  std::ostringstream s;
  s << "bilinear " << est.samples << " samples, " << res.body["bilinear"]["failures"].get<int>() << " failure(s); lemma1 "
    << est.lemma1_samples << " samples, " << res.body["lemma1"]["failures"].get<int>() << " failure(s); identity defect "
    << fields::format_number(worst_identity);
  res.summary = s.str();
  return res;
}

Result run_stability(const ExperimentConfig& cfg, const Output& out) {
  Result res;
  const auto pert = cfg.perturbation.value_or(Perturbation{});
  std::vector<InitialDatum> data_bar = cfg.data;
  const auto idx = static_cast<std::size_t>(pert.component);
  const double eps = fields::datum_l1(cfg.data[idx]);
  if (!(eps > pert.l1))
    throw Error(ErrorCode::precondition, "perturbation exceeds the mass of component " + std::to_string(idx + 1));
  data_bar[idx] = cfg.data[idx].scaled(1.0 - pert.l1 / eps);

  const auto setup = picard_setup(cfg);
  const auto rep = solver::stability_experiment(cfg.system, cfg.data, data_bar, setup.domain, setup.grid,
                                                picard_options(cfg));
  const auto checks = solver::evaluate_checks(rep.run, cfg.tolerances.quadrature, cfg.tolerances.ratio_slack);

  res.body["grid"] = grid_json(setup.grid);
  res.body["horizon"] = setup.horizon;
  res.body["triangle"] = domain_json(setup.domain);
  res.body["perturbation"] = {{"component", pert.component + 1}, {"l1", pert.l1}};
  res.body["data_distance"] = rep.data_distance;
  res.body["sup_solution_distance"] = finite_or_null(rep.sup_solution_distance);
  res.body["sup_time"] = rep.sup_time;
  res.body["k2_observed"] = finite_or_null(rep.k2_observed);
  res.body["k2_predicted"] = number_or_null(rep.k2_predicted);
  res.body["verdict"] = std::string(solver::to_string(rep.verdict));
  res.body["run"] = picard_json(rep.run);
  res.body["run_bar"] = picard_json(rep.run_bar);

  json c = json::object();
  if (rep.verdict == solver::Verdict::converged) {
    const bool floor_ok = rep.k2_observed >= 1.0 - cfg.tolerances.quadrature;
    c["k2_at_least_one"] = floor_ok;
    res.violated |= !floor_ok;
    if (rep.k2_predicted) {
      const double bound = *rep.k2_predicted * (1.0 + cfg.tolerances.stability_slack) * rep.data_distance;
      const bool ok = rep.sup_solution_distance <= bound;
      c["bound"] = bound;
      c["k2_bounded"] = ok;
      res.violated |= !ok;
    }
  } else if (checks.applicable) {
    res.violated = true;
  }
  res.body["checks"] = c;

  out.convergence(rep.run);
  out.convergence(rep.run_bar, "convergence_bar");
  std::ostringstream s;
  s << solver::to_string(rep.verdict) << ", sup distance " << fields::format_number(rep.sup_solution_distance)
    << " for data distance " << fields::format_number(rep.data_distance) << ", k2 observed "
    << fields::format_number(rep.k2_observed);
  res.summary = s.str();
  return res;
}

Result run_glue(const ExperimentConfig& cfg, const Output& out) {
  Result res;
  const auto tri = data_triangle(cfg);
  const double horizon = cfg.grid.horizon.value_or(tri ? tri->t_star : 1.0);
  solver::GlueOptions opts;
  opts.picard = picard_options(cfg);
  opts.consistency_tolerance = cfg.tolerances.glue_consistency;
  res.body["horizon"] = horizon;
  solver::GlueResult glue;
  try {
    glue = solver::glue_solve(cfg.system, cfg.partition, cfg.data, horizon, spacing_of(cfg), opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::gluing) throw;
    res.body["error"] = e.what();
    res.violated = true;
    res.summary = e.what();
    return res;
  }
  json subs = json::array();
  bool converged = true;
  for (const auto& sp : glue.subproblems) {
    subs.push_back({{"part", {sp.part.lo, sp.part.hi}},
                    {"grid", grid_json(sp.grid)},
                    {"verdict", std::string(solver::to_string(sp.verdict))},
                    {"iterations", sp.iterations}});
    converged &= sp.verdict == solver::Verdict::converged;
  }
  const bool ok = glue.mismatch <= cfg.tolerances.glue_mismatch;
  res.body["grid"] = grid_json(glue.grid);
  res.body["subproblems"] = subs;
  res.body["mismatch"] = glue.mismatch;
  res.body["determined_fraction"] = glue.determined_fraction;
  res.body["checks"] = {{"mismatch_bounded", ok}, {"tolerance", cfg.tolerances.glue_mismatch}, {"converged", converged}};
  res.violated = !ok || !converged;
  out.fields(glue.glued, "glued_u");
  res.summary = "mismatch " + fields::format_number(glue.mismatch) + " over " +
                std::to_string(glue.subproblems.size()) + " sub-problem(s)";
  return res;
}

core::SystemSpec two_by_two(std::span<const double> speeds, double alpha, double beta) {
  const std::vector<core::CouplingEntry> entries{
      {0, 0, 1, -0.5 * alpha}, {0, 1, 0, -0.5 * alpha}, {1, 0, 1, -0.5 * beta}, {1, 1, 0, -0.5 * beta}};
  return core::SystemSpec::from_triplets(std::vector<double>(speeds.begin(), speeds.end()), entries);
}

struct Refinement {
  json levels = json::array();
  std::vector<double> residual;
  std::vector<double> defect;
  bool converged = true;
  std::optional<wave::WaveGradient> coarse;
};

Refinement refine_wave(const ExperimentConfig& cfg, const core::SystemSpec& spec) {
  Refinement out;
  auto local = cfg;
  local.system = spec;
  const double c1 = spec.speed(0);
  const double c2 = spec.speed(1);
  for (int r = 0; r <= cfg.wave_bridge.refinements; ++r) {
    const auto setup = picard_setup(local, std::ldexp(1.0, r));
    const auto run = solver::picard_solve(spec, cfg.data, std::nullopt, setup.grid, picard_options(cfg));
    out.converged &= run.report.verdict == solver::Verdict::converged;
    auto w = wave::reconstruct_w_gradient(run.fields[0], run.fields[1], c1, c2);
    const auto res = wave::wave_residual(w.wt, w.wx, c1 * c1);
    out.residual.push_back(res.l1_residual);
    out.defect.push_back(res.compat_defect);
    json level = {{"dx", setup.grid.dx},
                  {"dt", setup.grid.dt},
                  {"verdict", std::string(solver::to_string(run.report.verdict))},
                  {"l1_residual", res.l1_residual},
                  {"compat_defect", res.compat_defect}};
    if (r > 0) {
      level["residual_ratio"] = out.residual[r - 1] > 0.0 ? json(res.l1_residual / out.residual[r - 1]) : json(nullptr);
      level["defect_ratio"] = out.defect[r - 1] > 0.0 ? json(res.compat_defect / out.defect[r - 1]) : json(nullptr);
    }
    out.levels.push_back(level);
    if (r == 0) out.coarse = std::move(w);
  }
  return out;
}

Result run_wave_bridge(const ExperimentConfig& cfg, const Output& out) {
  Result res;
  const auto& s = cfg.system;
  const double alpha = -(s.coupling(0, 0, 1) + s.coupling(0, 1, 0));
  const double beta = -(s.coupling(1, 0, 1) + s.coupling(1, 1, 0));
  bool pure = true;
  for (int i = 0; i < 2; ++i) pure &= s.coupling(i, 0, 0) == 0.0 && s.coupling(i, 1, 1) == 0.0;
  const auto red = wave::check_compatibility(s.speed(0), s.speed(1), alpha, beta);
  const auto reduction_json = [](const wave::WaveReduction& r) {
    return json{{"c1", r.c1},
                {"c2", r.c2},
                {"alpha", r.alpha},
                {"beta", r.beta},
                {"compatible", r.compatible},
                {"normalized", r.normalized},
                {"speed_defect", r.speed_defect},
                {"coupling_defect", r.coupling_defect}};
  };
  res.body["reduction"] = reduction_json(red);
  res.body["reduction"]["product_form"] = pure;

  const double lo = cfg.tolerances.wave_ratio_lo;
  const double hi = cfg.tolerances.wave_ratio_hi;
  const double floor = cfg.tolerances.wave_control_floor;
  // Compatible runs converge at first order; incompatible ones stall.
  const auto judge = [&](const Refinement& ref, bool compatible) {
    json c = json::object();
    bool ok = ref.converged;
    for (std::size_t r = 1; r < ref.residual.size(); ++r) {
      const double rr = ref.residual[r] / ref.residual[r - 1];
      const double dr = ref.defect[r] / ref.defect[r - 1];
      if (compatible) {
        ok &= rr >= lo && rr <= hi && dr >= lo && dr <= hi;
      } else {
        ok &= rr >= floor;
      }
    }
    c["converged"] = ref.converged;
    c["expectation"] = compatible ? "first-order decay" : "residual bounded away from zero";
    c["holds"] = ok;
    return c;
  };

  const auto main = refine_wave(cfg, s);
  res.body["main"] = {{"levels", main.levels}, {"checks", judge(main, red.compatible && pure)}};
  res.violated |= !res.body["main"]["checks"]["holds"].get<bool>();
  if (main.coarse) {
    out.field(main.coarse->wt, "wt");
    out.field(main.coarse->wx, "wx");
  }

  std::ostringstream sum;
  sum << (red.compatible ? "compatible" : "incompatible") << ", residual " << fields::format_number(main.residual.front())
      << " -> " << fields::format_number(main.residual.back());

  if (cfg.wave_bridge.control) {
    const auto& ctl = *cfg.wave_bridge.control;
    const auto spec = two_by_two(s.speeds(), ctl.alpha, ctl.beta);
    const auto cred = wave::check_compatibility(s.speed(0), s.speed(1), ctl.alpha, ctl.beta);
    const auto control = refine_wave(cfg, spec);
    res.body["control"] = {{"reduction", reduction_json(cred)},
                           {"levels", control.levels},
                           {"checks", judge(control, cred.compatible)}};
    res.violated |= !res.body["control"]["checks"]["holds"].get<bool>();
    sum << "; control residual " << fields::format_number(control.residual.front()) << " -> "
        << fields::format_number(control.residual.back());
  } else {
    res.body["control"] = nullptr;
  }
  res.summary = sum.str();
  return res;
}

Result run_blowup(const ExperimentConfig& cfg, const Output& out) {
  Result res;
  const auto tri = data_triangle(cfg);
  const double horizon = cfg.blowup.horizon.value_or(tri ? 10.0 * tri->t_star : 1.0);
  solver::BlowupOptions opts;
  opts.threshold = cfg.tolerances.blowup_threshold;
  const auto probe = solver::blowup_probe(cfg.system, cfg.data, horizon, spacing_of(cfg), opts);

  // An admissible null system must stay bounded; otherwise only an explicit
  // expectation turns the outcome into a check.
  std::optional<bool> expected = cfg.blowup.expect_blow_up;
  if (!expected && core::validate(cfg.system).null_condition_holds &&
      core::contraction_budget(core::gamma(cfg.system), total_mass(cfg.data)).admissible)
    expected = false;

  json checks = json::object();
  bool ok = !expected || probe.blew_up == *expected;
  checks["expected_blow_up"] = expected ? json(*expected) : json(nullptr);
  if (cfg.blowup.t_detect_range) {
    const auto [lo, hi] = *cfg.blowup.t_detect_range;
    const bool in_range = probe.t_detect && *probe.t_detect >= lo && *probe.t_detect <= hi;
    checks["t_detect_range"] = {lo, hi};
    checks["t_detect_in_range"] = in_range;
    ok &= in_range;
  }
  checks["holds"] = ok;
  res.violated = !ok;

  res.body["horizon"] = horizon;
  res.body["grid"] = grid_json(probe.grid);
  res.body["blew_up"] = probe.blew_up;
  res.body["t_detect"] = number_or_null(probe.t_detect);
  res.body["max_abs_final"] = probe.growth_curve.empty() ? json(nullptr) : finite_or_null(probe.growth_curve.back().second);
  res.body["checks"] = checks;

  auto table = out.open(fs::path("tables") / "growth.csv");
  emit_growth_table(table, probe.growth_curve);
  res.summary = probe.blew_up ? "blow-up detected at t = " + fields::format_number(*probe.t_detect)
                              : "no blow-up up to t = " + fields::format_number(horizon);
  return res;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const Output out(cfg, out_dir);
  Result res;
  if (cfg.experiment == "validate") {
    res = run_validate(cfg, out);
  } else if (cfg.experiment == "picard") {
    res = run_picard(cfg, out);
  } else if (cfg.experiment == "estimates") {
    res = run_estimates(cfg, out);
  } else if (cfg.experiment == "stability") {
    res = run_stability(cfg, out);
  } else if (cfg.experiment == "glue") {
    res = run_glue(cfg, out);
  } else if (cfg.experiment == "wave-bridge") {
    res = run_wave_bridge(cfg, out);
  } else if (cfg.experiment == "blowup") {
    res = run_blowup(cfg, out);
  } else {
    throw Error(ErrorCode::config, "unknown experiment " + cfg.experiment);
  }

  RunOutcome outcome;
  outcome.exit_code = res.violated ? kViolated : kSuccess;
  outcome.summary = res.summary;
  json report = {{"experiment", cfg.experiment},
                 {"status", outcome.exit_code},
                 {"holds", !res.violated},
                 {"summary", res.summary},
                 {"config", resolved_config(cfg)},
                 {"result", res.body}};
  outcome.report_json = report.dump(2) + "\n";
  auto file = out.open("report.json");
  file << outcome.report_json;
  if (!file) throw Error(ErrorCode::io, "failed writing report.json");
  return outcome;
}

}  // namespace nullwave::cli
