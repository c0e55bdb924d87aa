#include "cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <CLI11.hpp>

#include "cli/render.hpp"
#include "cli/state_io.hpp"
#include "entsep/bloch.hpp"
#include "entsep/density.hpp"
#include "entsep/error.hpp"
#include "entsep/locc.hpp"
#include "entsep/measures.hpp"
#include "entsep/mixtures.hpp"
#include "entsep/separability.hpp"
#include "entsep/version.hpp"

namespace entsep::cli {

namespace {

struct Settings {
  double tol = default_tol;
  std::string format = "text";
  std::string input;
  bool strict = false;
  bool distance = false;
  SearchParams search;
  std::size_t parties = 0;
  std::size_t resolution = 0;
  std::string out_path;
  std::uint64_t table_cap = 100'000;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
};

Json header(const std::string& command, const Settings& s) {
  Json h;
  h["tool"] = "entsep";
  h["version"] = entsep::version;
  h["command"] = command;
  h["tolerances"] = Json{{"tol", s.tol}};
  return h;
}

Json spread_json(const Spread& s) {
  if (s.infinite) return "infinity";
  return s.value;
}

Json angles_json(const BlochAngles& angles) {
  Json out = Json::array();
  for (const auto& a : angles) out.push_back(Json{{"theta", a.theta}, {"phi", a.phi}});
  return out;
}

Json parties_json(const std::vector<std::size_t>& parties) { return Json(parties); }

Json measures_json(const MeasureReport& m) {
  Json out;
  out["mu"] = spread_json(m.mu);
  out["mu_regularized"] = m.mu_regularized;
  out["nonsingular_count"] = m.nonsingular_count;
  out["per_axis_counts"] = Json(m.per_axis_counts);
  if (m.distance) out["distance"] = *m.distance;
  return out;
}

Json structure_json(const AmplitudeTensor& t, const EntanglementStructure& s) {
  Json out;
  Json blocks = Json::array();
  for (const auto& b : s.blocks) blocks.push_back(parties_json(b));
  out["blocks"] = blocks;
  Json factors = Json::array();
  for (std::size_t i = 0; i < s.blocks.size(); ++i)
    factors.push_back(Json{{"parties", parties_json(s.blocks[i])},
                           {"amplitudes", amplitudes_json(s.factors[i])}});
  out["factors"] = factors;
  out["global_phase"] = s.global_phase;
  out["scale"] = s.scale;
  const AmplitudeTensor rebuilt = assemble(s);
  double err = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(rebuilt[i] - t[i]));
  out["reassembly_error"] = err;
  return out;
}

Json bloch_json(const AngleReconstruction& r, bool with_residuals) {
  Json out;
  out["success"] = r.success;
  out["angles"] = angles_json(r.angles);
  out["max_residual"] = r.report.max_residual;
  out["global_phase"] = r.report.global_phase;
  out["anchor_index"] = r.report.anchor_index;
  if (with_residuals) out["residuals"] = Json(r.report.residuals);
  return out;
}

Json analysis_json(const LabeledState& in, double tol) {
  const AmplitudeTensor& t = in.state;
  Json out;
  if (!in.label.empty()) out["label"] = in.label;
  out["n_parties"] = t.n_parties();
  out["local_dims"] = Json(std::vector<std::size_t>(t.local_dims().begin(), t.local_dims().end()));

  const SeparabilityVerdict v = is_separable_minors(t, tol);
  out["verdict"] = std::string(to_string(v.verdict));
  out["max_scaled_minor"] = v.max_scaled_minor;
  if (v.witness)
    out["witness"] = Json{{"axis", v.witness->axis},
                          {"line_a", v.witness->line_a},
                          {"line_b", v.witness->line_b},
                          {"positions", Json::array({v.witness->positions.first,
                                                     v.witness->positions.second})}};
  out["measures"] = measures_json(measure_report(t, tol));
  out["structure"] = structure_json(t, entanglement_structure(t, tol));

  if (!t.all_qubits())
    out["bloch"] = Json{{"skipped", "parties are not all qubits"}};
  else if (std::abs(t.norm() - 1.0) > tol)
    out["bloch"] = Json{{"skipped", "state is not normalized within tol"}};
  else
    out["bloch"] = bloch_json(reconstruct_angles(t, {tol, false}), false);
  return out;
}

Json run_analyze(const Settings& s) {
  const Json doc = read_json_file(s.input);
  Json report = header("analyze", s);
  if (!doc.is_array()) {
    report.update(analysis_json(parse_state(doc), s.tol));
    return report;
  }
  Json states = Json::array();
  for (const auto& st : parse_state_list(doc)) states.push_back(analysis_json(st, s.tol));
  report["states"] = states;
  return report;
}

Json run_bloch(const Settings& s) {
  const LabeledState in = parse_state(read_json_file(s.input));
  Json report = header("bloch", s);
  report["strict"] = s.strict;
  report.update(bloch_json(reconstruct_angles(in.state, {s.tol, s.strict}), true));
  return report;
}

Json run_factorize(const Settings& s) {
  const LabeledState in = parse_state(read_json_file(s.input));
  Json report = header("factorize", s);
  const EntanglementStructure st = entanglement_structure(in.state, s.tol);
  report["fully_separable"] =
      std::all_of(st.blocks.begin(), st.blocks.end(), [](const auto& b) { return b.size() == 1; });
  report.update(structure_json(in.state, st));
  return report;
}

Json run_measures(const Settings& s) {
  const LabeledState in = parse_state(read_json_file(s.input));
  const AmplitudeTensor& t = in.state;
  Json report = header("measures", s);
  MeasureReport m = measure_report(t, s.tol);
  Json search;
  if (s.distance) {
    const NearestSeparable best = nearest_separable(t, s.search);
    m.distance = best.distance;
    search["grid_resolution"] = s.search.grid_resolution;
    search["refinement_iterations"] = s.search.refinement_iterations;
    search["seed"] = s.search.seed;
    search["angles"] = angles_json(best.angles);
  }
  report.update(measures_json(m));
  Json axes = Json::array();
  for (const AxisSpread& a : ratio_spread(t, s.tol).per_axis)
    axes.push_back(Json{{"axis", a.axis},
                        {"spread", spread_json(a.spread)},
                        {"max_scaled_minor", a.max_scaled_minor}});
  report["per_axis"] = axes;
  if (s.distance) report["search"] = search;
  return report;
}

Json run_mix(const Settings& s) {
  const Ensemble e = parse_ensemble(read_json_file(s.input));
  Json report = header("mix", s);
  const AmplitudeTensor combined = combine_pseudo_pure(e);
  const SeparabilityVerdict v = mixed_separability(e, s.tol);
  report["members"] = e.size();
  report["combined"] = state_json(combined);
  report["combined_norm"] = combined.norm();
  report["verdict"] = std::string(to_string(v.verdict));
  report["max_scaled_minor"] = v.max_scaled_minor;
  return report;
}

Json run_density(const Settings& s) {
  const Json doc = read_json_file(s.input);
  const DensityMatrix rho =
      is_ensemble(doc) ? density_from_ensemble(parse_ensemble(doc)) : density_from_state(parse_state(doc).state);
  Json report = header("density", s);
  report["source"] = is_ensemble(doc) ? "ensemble" : "state";
  report["dim"] = rho.dim();
  report["purity"] = purity(rho);
  Json eig = Json::array();
  for (const Eigenpair& p : spectral_decomposition(rho)) eig.push_back(p.value);
  report["eigenvalues"] = eig;
  if (!rho.all_qubits()) {
    report["row_ratio"] = Json{{"skipped", "parties are not all qubits"}};
    return report;
  }
  const RowRatioReport rr = row_ratio_conditions(rho, s.tol);
  const auto degenerate = std::count_if(rr.conditions.begin(), rr.conditions.end(),
                                        [](const RowRatioCondition& c) { return c.degenerate; });
  report["row_ratio"] = Json{{"verdict", std::string(to_string(rr.verdict))},
                             {"max_deviation", rr.max_deviation},
                             {"conditions", rr.conditions.size()},
                             {"degenerate_conditions", degenerate}};
  return report;
}

Json run_table(const Settings& s) {
  namespace fs = std::filesystem;
  const fs::path target(s.out_path);
  fs::path tmp = target;
  tmp += ".tmp";

  std::uint64_t count = 0;
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot write '" + tmp.string() + "'");
    os << "[";
    try {
      separable_table(
          s.parties, s.resolution,
          [&](const SeparableTableEntry& e) {
            Json entry = state_json(e.state, "grid point " + std::to_string(count));
            entry["angles"] = angles_json(e.angles);
            os << (count ? ",\n" : "\n") << entry.dump();
            ++count;
          },
          s.table_cap);
    } catch (...) {
      os.close();
      fs::remove(tmp);
      throw;
    }
    os << "\n]\n";
    if (!os) throw ValidationError("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);

  Json report = header("table", s);
  report["parties"] = s.parties;
  report["resolution"] = s.resolution;
  report["entries"] = count;
  report["out"] = target.string();
  return report;
}

Json run_trajectory(const Settings& s) {
  const Json doc = read_json_file(s.input);
  if (!doc.is_array()) throw ValidationError("trajectory file must be a json array of states");
  const std::vector<LabeledState> in = parse_state_list(doc);
  std::vector<AmplitudeTensor> states;
  for (const auto& st : in) states.push_back(st.state);
  const TrajectoryScan scan = scan_trajectory(states, s.tol);

  Json report = header("trajectory", s);
  Json samples = Json::array();
  for (const TrajectorySample& smp : scan.samples) {
    Json j;
    j["index"] = smp.index;
    if (!in[smp.index].label.empty()) j["label"] = in[smp.index].label;
    j["verdict"] = std::string(to_string(smp.verdict));
    j["mu"] = spread_json(smp.report.mu);
    j["mu_regularized"] = smp.report.mu_regularized;
    j["nonsingular_count"] = smp.report.nonsingular_count;
    samples.push_back(j);
  }
  report["samples"] = samples;
  report["crossings"] = Json(scan.crossings);
  return report;
}

Json run_locc_check(const Settings& s) {
  const AmplitudeTensor t = parse_state(read_json_file(s.input)).state;
  std::mt19937_64 rng(s.seed);

  std::size_t verdict_changes = 0;
  std::size_t count_changes = 0;
  std::size_t steps = 0;
  double max_dev = 0.0;
  double max_norm = 0.0;
  Verdict before = Verdict::separable;
  std::vector<std::size_t> order(t.n_parties());
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<LocalUnitary> us;
    for (std::size_t p : order) us.push_back({p, random_unitary(t.dim(p), rng)});
    const LoccInvarianceReport r = check_locc_invariance(t, us, s.tol);
    before = r.verdict_before;
    verdict_changes += r.verdict_changes;
    max_dev = std::max(max_dev, r.max_axis_multiset_deviation);
    max_norm = std::max(max_norm, r.max_norm_change);
    for (const LoccStep& st : r.steps) {
      ++steps;
      if (st.nonsingular_before != st.nonsingular_after) ++count_changes;
    }
  }

  Json report = header("locc-check", s);
  report["seed"] = s.seed;
  report["trials"] = s.trials;
  report["steps"] = steps;
  report["verdict"] = std::string(to_string(before));
  report["verdict_changes"] = verdict_changes;
  report["max_axis_multiset_deviation"] = max_dev;
  report["max_norm_change"] = max_norm;
  report["nonsingular_count_changes"] = count_changes;
  return report;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Separability analysis of multi-party pure states", "entsep"};
  app.set_version_flag("--version", std::string(entsep::version));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", s.tol, "Scaled-minor and residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", s.format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto add_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", s.input, what)->required();
  };

  auto* analyze = app.add_subcommand("analyze", "Verdict, measures and entanglement structure");
  add_input(analyze, "State file, or json array of states");
  auto* bloch = app.add_subcommand("bloch", "Bloch-angle reconstruction and residuals");
  add_input(bloch, "State file");
  bloch->add_flag("--strict", s.strict, "Do not align the global phase");
  auto* factorize = app.add_subcommand("factorize", "Entanglement structure");
  add_input(factorize, "State file");
  auto* measures = app.add_subcommand("measures", "Entanglement measures");
  add_input(measures, "State file");
  measures->add_flag("--distance", s.distance, "Search for the nearest product state");
  measures->add_option("--grid", s.search.grid_resolution, "Angle grid resolution")
      ->check(CLI::PositiveNumber);
  measures->add_option("--refine", s.search.refinement_iterations, "Refinement sweeps");
  measures->add_option("--seed", s.search.seed, "Seed for refinement restarts");
  auto* mix = app.add_subcommand("mix", "Pseudo-pure combination of an ensemble");
  add_input(mix, "Ensemble file");
  auto* density = app.add_subcommand("density", "Purity, spectrum and row-ratio conditions");
  add_input(density, "State or ensemble file");
  auto* table = app.add_subcommand("table", "Write the Bloch-angle table of product states");
  table->add_option("--parties", s.parties, "Number of qubits")->required()->check(CLI::PositiveNumber);
  table->add_option("--resolution", s.resolution, "Grid resolution")
      ->required()
      ->check(CLI::PositiveNumber);
  table->add_option("--out", s.out_path, "Output path")->required();
  table->add_option("--max-entries", s.table_cap, "Refuse tables larger than this");
  auto* trajectory = app.add_subcommand("trajectory", "Verdict crossings along a state sequence");
  add_input(trajectory, "Json array of states in time order");
  auto* locc = app.add_subcommand("locc-check", "Random local-unitary invariance trials");
  add_input(locc, "State file");
  locc->add_option("--seed", s.seed, "Seed for the random unitaries");
  locc->add_option("--trials", s.trials, "Number of trials");

  std::vector<std::string> argv_store{"entsep"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n"
                                                           : app.help());
      return ExitCode::ok;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return ExitCode::invalid_input;
  }

  try {
    Json report;
    if (*analyze) report = run_analyze(s);
    else if (*bloch) report = run_bloch(s);
    else if (*factorize) report = run_factorize(s);
    else if (*measures) report = run_measures(s);
    else if (*mix) report = run_mix(s);
    else if (*density) report = run_density(s);
    else if (*table) report = run_table(s);
    else if (*trajectory) report = run_trajectory(s);
    else report = run_locc_check(s);
    out << render(report, s.format == "json" ? Format::json : Format::text) << std::flush;
    return ExitCode::ok;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::resource_limit;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::invalid_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return ExitCode::unexpected;
  }
}

}  // namespace entsep::cli
