// Copyright 2026 The qlat authors
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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlat/codec.hpp"
#include "qlat/compiler.hpp"
#include "qlat/density.hpp"
#include "qlat/families.hpp"
#include "qlat/lightcone.hpp"
#include "qlat/spectral.hpp"
#include "qlat/statevector.hpp"
#include "qlat/synthesis.hpp"

using namespace qlat;
using nlohmann::json;

namespace {

/// Bad argument values exit with code 2; domain failures exit with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::string format = "text";
  uint64_t seed = 0;
  double tol = 1e-9;
  int qubit_cap = 22;

  bool machine() const { return format == "json-report"; }
  RunOptions run_options() const {
    RunOptions opt;
    opt.qubit_cap = qubit_cap;
    return opt;
  }
};

void emit(const GlobalFlags &flags, const json &machine_doc,
          const std::string &text) {
  if (flags.machine())
    std::cout << machine_doc.dump(2) << "\n";
  else
    std::cout << text;
}

json restriction_report_json(const RestrictionOutcome &out) {
  json j;
  j["epsilon"] = out.epsilon;
  j["s"] = out.s;
  j["depth"] = out.depth;
  j["analytic_error_bound"] = out.analytic_error_bound;
  j["surviving"] = out.surviving;
  j["seed"] = out.seed;
  if (out.empirical_error) j["empirical_error"] = *out.empirical_error;
  json erased = json::array();
  for (const ErasedGateRecord &r : out.erased)
    erased.push_back({{"layer", r.layer},
                      {"support", r.support},
                      {"weight", r.weight},
                      {"covered", r.covered},
                      {"bound", r.bound}});
  j["erased_gates"] = erased;
  return j;
}

json report_json(const BoundReport &r) {
  return json{{"suite", r.suite},       {"name", r.name},
              {"n", r.n},               {"d", r.d},
              {"epsilon", r.epsilon},   {"analytic", r.analytic},
              {"empirical", r.empirical}, {"satisfied", r.satisfied},
              {"seed", r.seed}};
}

int finish_reports(const GlobalFlags &flags, const std::string &suite,
                   const std::vector<BoundReport> &reports) {
  bool all_ok = true;
  for (const BoundReport &r : reports) all_ok &= r.satisfied;
  if (flags.machine()) {
    json doc;
    doc["suite"] = suite;
    doc["seed"] = flags.seed;
    doc["reports"] = json::array();
    for (const BoundReport &r : reports) doc["reports"].push_back(report_json(r));
    doc["all_satisfied"] = all_ok;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << bound_report_csv_header() << "\n";
    for (const BoundReport &r : reports) std::cout << to_csv_row(r) << "\n";
  }
  return all_ok ? 0 : 1;
}

std::vector<int> parse_id_list(const std::string &csv) {
  std::vector<int> ids;
  std::string token;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (!token.empty()) ids.push_back(std::stoi(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  return ids;
}

std::string derive_sibling_path(const std::string &path, const std::string &tag) {
  const size_t dot = path.rfind('.');
  if (dot == std::string::npos) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(const GlobalFlags &flags, const std::string &kind, int n, int k,
              double delta, int m, const std::string &out_path) {
  Circuit circuit;
  json extra;
  std::string summary;
  if ((kind == "cat1d" || kind == "parity-line" || kind == "parity-width2" ||
       kind == "parity-recursive") &&
      n < 1)
    throw UsageError("synth " + kind + ": --n must be positive");
  if (kind == "fanout" && k < 1) throw UsageError("synth fanout: --k must be positive");
  if (kind == "appendix-d" && (k < 1 || !(delta > 0.0 && delta < 1.0)))
    throw UsageError("synth appendix-d: need --k >= 1 and --delta in (0,1)");
  if (kind == "cat1d") {
    circuit = cat_1d(n);
    summary = "cat1d n=" + std::to_string(n);
  } else if (kind == "parity-line") {
    ParityCircuit p = parity_line(n);
    circuit = p.circuit;
    extra["target"] = p.target;
    summary = "parity-line n=" + std::to_string(n);
  } else if (kind == "parity-width2") {
    ParityCircuit p = parity_width2(n);
    circuit = p.circuit;
    extra["target"] = p.target;
    extra["depth_constant"] = p.depth_constant;
    summary = "parity-width2 n=" + std::to_string(n);
  } else if (kind == "parity-recursive") {
    ParityCircuit p = parity_recursive_2d(n, parity_line_lattice(m));
    circuit = p.circuit;
    extra["target"] = p.target;
    extra["base_inputs"] = m;
    summary = "parity-recursive n=" + std::to_string(n) + " m=" + std::to_string(m);
  } else if (kind == "fanout") {
    circuit = restricted_fanout(k);
    summary = "fanout k=" + std::to_string(k);
  } else if (kind == "appendix-d") {
    CounterexamplePair ad = erasure_counterexample(k, delta);
    save_circuit(out_path, ad.with_cz);
    const std::string stripped = derive_sibling_path(out_path, "_no_cz");
    save_circuit(stripped, ad.without_cz);
    json doc;
    doc["files"] = {out_path, stripped};
    doc["k"] = k;
    doc["delta"] = delta;
    doc["predicted_error"] = ad.spec.predicted_error;
    emit(flags, doc,
         "appendix-d k=" + std::to_string(k) + " delta=" + std::to_string(delta) +
             "\n  wrote " + out_path + " and " + stripped +
             "\n  predicted_error " + std::to_string(ad.spec.predicted_error) + "\n");
    return 0;
  } else {
    throw Error("unknown synth kind: " + kind);
  }

  ValidationReport rep = validate(circuit);
  if (!rep.ok()) throw Error("synthesized circuit failed validation:\n" + rep.to_string());
  save_circuit(out_path, circuit);
  json doc;
  doc["file"] = out_path;
  doc["kind"] = kind;
  doc["depth"] = circuit.depth();
  doc["qubits"] = circuit.qubit_count();
  if (!extra.is_null()) doc["detail"] = extra;
  emit(flags, doc,
       summary + "\n  wrote " + out_path + "\n  depth " +
           std::to_string(circuit.depth()) + ", qubits " +
           std::to_string(circuit.qubit_count()) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// compile

int cmd_compile(const GlobalFlags &flags, const std::string &in_path,
                const std::string &out_path, bool verify) {
  Circuit c = load_circuit(in_path).circuit;
  if (c.layout.kind != LayoutKind::all_to_all)
    throw Error("expected all_to_all layout in " + in_path);
  Circuit v = embed_circuit_2d(c);
  ValidationReport rep = validate(v);
  if (!rep.ok()) throw Error("compiled circuit failed validation:\n" + rep.to_string());
  save_circuit(out_path, v);

  json doc;
  doc["file"] = out_path;
  doc["input_depth"] = c.depth();
  doc["compiled_depth"] = v.depth();
  doc["rows"] = v.layout.rows;
  doc["cols"] = v.layout.cols;
  std::string text = "compiled " + in_path + " -> " + out_path + "\n  depth " +
                     std::to_string(c.depth()) + " -> " +
                     std::to_string(v.depth()) + " (7x per CZ layer)\n";

  if (verify) {
    const int n = c.qubit_count();
    if ((n + 1) * n > flags.qubit_cap)
      throw Error("verification needs " + std::to_string((n + 1) * n) +
                  " qubits, above the cap");
    std::mt19937_64 rng(flags.seed);
    double worst = 1.0;
    for (int trial = 0; trial < 5; ++trial) {
      StateVector phi = random_state(n, rng);
      StateVector want = run_state(c, phi, flags.run_options());
      StateVector init;
      init.num_qubits = v.qubit_count();
      init.amps.assign(uint64_t{1} << v.qubit_count(), 0.0);
      uint64_t ones = 0;
      for (int q = n; q < v.qubit_count(); ++q) ones |= uint64_t{1} << q;
      for (uint64_t i = 0; i < phi.size(); ++i) init.amps[i | ones] = phi.amps[i];
      StateVector got = run_state(v, std::move(init), flags.run_options());
      cplx overlap = 0.0;
      for (uint64_t i = 0; i < want.size(); ++i)
        overlap += std::conj(want.amps[i]) * got.amps[i | ones];
      worst = std::min(worst, std::norm(overlap));
    }
    doc["verify_seed"] = flags.seed;
    doc["verify_min_fidelity"] = worst;
    text += "  verify: min fidelity " + std::to_string(worst) + " (seed " +
            std::to_string(flags.seed) + ")\n";
    if (worst < 1.0 - flags.tol) throw Error("verification failed");
  }
  emit(flags, doc, text);
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const GlobalFlags &flags, const std::string &what,
                const std::string &in_path, int qubit, const std::string &set_csv,
                double epsilon, int s, const std::string &out_path) {
  Circuit c = load_circuit(in_path).circuit;
  if (what == "lightcone") {
    LightCone fwd = forward_lightcone(c, qubit);
    LightCone bwd = backward_lightcone(c, qubit);
    json doc;
    doc["qubit"] = qubit;
    doc["forward"] = fwd.members;
    doc["backward"] = bwd.members;
    std::string text = "forward cone of " + std::to_string(qubit) + ": {";
    for (size_t i = 0; i < fwd.members.size(); ++i)
      text += (i ? "," : "") + std::to_string(fwd.members[i]);
    text += "}\nbackward cone: {";
    for (size_t i = 0; i < bwd.members.size(); ++i)
      text += (i ? "," : "") + std::to_string(bwd.members[i]);
    text += "}\n";
    emit(flags, doc, text);
    return 0;
  }
  if (what == "separable") {
    std::vector<int> subset = parse_id_list(set_csv);
    SeparabilityCertificate cert = check_separable(c, subset);
    json doc;
    doc["subset"] = subset;
    doc["separable"] = cert.separable;
    if (!cert.separable)
      doc["witness"] = {cert.witness.first, cert.witness.second};
    emit(flags, doc,
         cert.separable
             ? "separable\n"
             : "witness (" + std::to_string(cert.witness.first) + "," +
                   std::to_string(cert.witness.second) + ")\n");
    return 0;  // a witness is a verdict, not a failure
  }
  if (what == "restrict") {
    RestrictionOutcome out = restriction_pipeline_1d(
        c, epsilon, /*measure_empirical=*/c.inputs.size() <= 12,
        flags.run_options(), flags.seed);
    json rep = restriction_report_json(out);
    if (!out_path.empty()) save_circuit(out_path, out.approx, &rep);
    std::string text = "restriction: s=" + std::to_string(out.s) + ", |S|=" +
                       std::to_string(out.surviving.size()) + ", erased " +
                       std::to_string(out.erased.size()) + " gates, bound " +
                       std::to_string(out.analytic_error_bound) + "\n";
    if (out.empirical_error)
      text += "  empirical error " + std::to_string(*out.empirical_error) + "\n";
    emit(flags, rep, text);
    return 0;
  }
  if (what == "contiguous-restrict") {
    ContiguousCertificate cert;
    RestrictionOutcome out =
        contiguous_restriction(c, s, &cert, /*check_mixedness=*/c.inputs.size() <= 10,
                               flags.run_options());
    json rep = restriction_report_json(out);
    rep["interval"] = {out.surviving.empty() ? -1 : out.surviving.front(),
                       out.surviving.empty() ? -1 : out.surviving.back()};
    rep["per_gate_error"] = cert.analytic_error;
    rep["max_backward_cone_inputs"] = cert.max_backward_cone_inputs;
    if (cert.mixedness_checked)
      rep["mixedness_deviation"] = cert.mixedness_deviation;
    if (!out_path.empty()) save_circuit(out_path, out.approx, &rep);
    emit(flags, rep,
         "contiguous restriction: |I_d|=" + std::to_string(out.surviving.size()) +
             ", analytic " + std::to_string(out.analytic_error_bound) + "\n");
    return 0;
  }
  if (what == "width2-select") {
    std::vector<int> subset = parse_id_list(set_csv);
    if (c.layers.empty()) throw Error("width2-select: circuit has no layers");
    Circuit prefix = c;
    Layer last = prefix.layers.back();
    prefix.layers.pop_back();
    std::vector<int> kept = width2_structure_select(prefix, subset, last, s);
    json doc;
    doc["kept"] = kept;
    std::string text = "kept " + std::to_string(kept.size()) + " of " +
                       std::to_string(subset.size()) + "\n";
    emit(flags, doc, text);
    return 0;
  }
  throw Error("unknown analysis: " + what);
}

// ---------------------------------------------------------------------------
// experiment

std::vector<BoundReport> parity_bound_suite(const GlobalFlags &flags, int n,
                                            int count) {
  std::vector<BoundReport> reports;
  std::mt19937_64 rng(flags.seed);
  for (int d : {1, 2}) {
    for (int i = 0; i < count; ++i) {
      Circuit c = random_line_circuit(n, d, 2, rng);
      BoundReport r = bound_experiment(c, 0, WhichBound::parity,
                                       flags.run_options(), flags.seed);
      r.name = "random-d" + std::to_string(d) + "-" + std::to_string(i);
      reports.push_back(r);
    }
  }
  // A circuit that never reads input 0 scores exactly 1/2.
  Circuit blind;
  blind.layout = Layout::line(n);
  for (int q = 0; q < n; ++q) blind.inputs.push_back(q);
  Layer l;
  l.czs.push_back({{1, 2}});
  blind.layers.push_back(l);
  BoundReport r = bound_experiment(blind, 0, WhichBound::parity,
                                   flags.run_options(), flags.seed);
  r.name = "cone-misses-input";
  reports.push_back(r);
  return reports;
}

std::vector<BoundReport> majority_bound_suite(const GlobalFlags &flags, int n,
                                              int count) {
  std::vector<BoundReport> reports;
  std::mt19937_64 rng(flags.seed);
  for (int i = 0; i < count; ++i) {
    Circuit c = random_line_circuit(n, 1, 2, rng);
    BoundReport r = bound_experiment(c, 0, WhichBound::majority,
                                     flags.run_options(), flags.seed);
    r.name = "random-" + std::to_string(i);
    reports.push_back(r);
  }
  return reports;
}

std::vector<BoundReport> tv_gap_suite(const GlobalFlags &flags, int n,
                                      double epsilon, int count) {
  std::vector<BoundReport> reports;
  std::mt19937_64 rng(flags.seed);
  for (int i = 0; i < count; ++i) {
    Circuit c = random_line_circuit(n, 2, 4, rng);
    RestrictionOutcome out =
        restriction_pipeline_1d(c, epsilon, false, flags.run_options(), flags.seed);
    BoundReport r = tv_gap(c, out.approx, c.inputs, epsilon, flags.run_options(),
                           flags.seed);
    r.name = "pipeline-" + std::to_string(i);
    reports.push_back(r);
  }
  Circuit c = random_line_circuit(n, 2, 4, rng);
  BoundReport control = tv_gap(c, c, c.inputs, epsilon, flags.run_options(), flags.seed);
  control.name = "identical-control";
  reports.push_back(control);
  return reports;
}

std::vector<BoundReport> unitary_gap_suite(const GlobalFlags &flags, int n,
                                           double epsilon, int count) {
  std::vector<BoundReport> reports;
  std::mt19937_64 rng(flags.seed);
  for (int i = 0; i < count; ++i) {
    Circuit c = random_line_circuit(n, 2, 4, rng);
    RestrictionOutcome out =
        restriction_pipeline_1d(c, epsilon, false, flags.run_options(), flags.seed);
    PhaseGapResult res =
        unitary_phase_gap(circuit_unitary(c), circuit_unitary(out.approx));
    reports.push_back(make_report("unitary-gap", "pipeline-" + std::to_string(i),
                                  n, out.depth, epsilon,
                                  16.0 * out.depth * epsilon, res.gap, flags.seed));
  }
  return reports;
}

std::vector<BoundReport> nekomata_suite(const GlobalFlags &flags, int n,
                                        double epsilon) {
  std::vector<BoundReport> reports;
  NekomataReport cat = nekomata_distance(cat_x_circuit(n), flags.run_options());
  BoundReport r1 = make_report("nekomata", "exact-cat", n, 0, 0.0, 0.25,
                               cat.product_quantity, flags.seed);
  r1.satisfied = std::abs(cat.product_quantity - 0.25) <= 1e-10;
  reports.push_back(r1);

  Circuit id;
  id.layout = Layout::line(n);
  for (int q = 0; q < n; ++q) id.inputs.push_back(q);
  NekomataReport plain = nekomata_distance(id, flags.run_options());
  reports.push_back(make_report("nekomata", "identity", n, 0, 0.0, 0.0,
                                plain.product_quantity, flags.seed));

  std::mt19937_64 rng(flags.seed);
  Circuit c = random_line_circuit(n, 2, 3, rng);
  RestrictionOutcome out =
      restriction_pipeline_1d(c, epsilon, false, flags.run_options(), flags.seed);
  std::vector<int> tilde = backward_disjoint_select(out.approx, out.surviving);
  NekomataReport shallow = nekomata_distance(c, flags.run_options());
  reports.push_back(make_report(
      "nekomata", "separable-shallow", n, out.depth, epsilon,
      std::pow(4.0, -static_cast<double>(tilde.size())) + 32.0 * out.depth * epsilon,
      shallow.product_quantity, flags.seed));
  return reports;
}

int cmd_experiment_fourier(const GlobalFlags &flags, const std::string &fn, int n) {
  std::function<double(uint64_t)> f;
  if (fn == "parity") {
    f = [](uint64_t x) { return parity_of(x) ? -1.0 : 1.0; };
  } else if (fn == "maj") {
    if (n % 2 == 0) throw Error("fourier: maj needs odd n");
    f = [n](uint64_t x) { return majority_of(x, n) ? 1.0 : -1.0; };
  } else {
    throw Error("fourier: unknown function " + fn);
  }
  FourierSpectrum s = spectrum(f, n);
  json doc;
  doc["fn"] = fn;
  doc["n"] = n;
  doc["parseval"] = s.parseval_total();
  json weights = json::array();
  std::string text = "fn=" + fn + " n=" + std::to_string(n) + "\n";
  for (int k = 0; k <= n; ++k) {
    const double w = weight_eq(s, k);
    weights.push_back(w);
    text += "  W^{=" + std::to_string(k) + "} = " + std::to_string(w) + "\n";
  }
  doc["weight_eq"] = weights;
  emit(flags, doc, text);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compiler, synthesizer, analyzer, and exact simulator for "
               "QAC-style circuits under all-to-all, line, and lattice "
               "connectivity"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"text", "json-report"}));
  app.add_option("--seed", flags.seed, "PRNG seed recorded in reports");
  app.add_option("--tol", flags.tol, "Numeric tolerance");
  app.add_option("--qubit-cap", flags.qubit_cap, "Dense simulation cap");

  // synth
  auto *synth = app.add_subcommand("synth", "Emit a construction to a file");
  synth->fallthrough();
  std::string synth_kind, synth_out;
  int synth_n = 0, synth_k = 1, synth_m = 2;
  double synth_delta = 0.5;
  synth->add_option("kind", synth_kind, "One of cat1d, parity-line, parity-width2, parity-recursive, fanout, appendix-d")
      ->required();
  synth->add_option("--n", synth_n, "Input size");
  synth->add_option("--k", synth_k, "Fanout level / appendix-d pair count");
  synth->add_option("--m", synth_m, "Recursion base input count");
  synth->add_option("--delta", synth_delta, "Appendix-d amplitude parameter");
  synth->add_option("--out", synth_out, "Output circuit file")->required();

  // compile
  auto *compile = app.add_subcommand("compile", "Embed all-to-all into the lattice");
  compile->fallthrough();
  std::string compile_in, compile_out;
  bool compile_verify = false;
  compile->add_option("--in", compile_in)->required();
  compile->add_option("--out", compile_out)->required();
  compile->add_flag("--verify", compile_verify, "Check fidelity on seeded random states");

  // analyze
  auto *analyze = app.add_subcommand("analyze", "Light-cone and restriction analyses");
  analyze->fallthrough();
  std::string analyze_what, analyze_in, analyze_set, analyze_out;
  int analyze_qubit = 0, analyze_s = 3;
  double analyze_eps = 0.05;
  analyze->add_option("what", analyze_what, "One of lightcone, separable, restrict, contiguous-restrict, width2-select")
      ->required();
  analyze->add_option("--in", analyze_in)->required();
  analyze->add_option("--qubit", analyze_qubit);
  analyze->add_option("--set", analyze_set, "Comma-separated qubit ids");
  analyze->add_option("--epsilon", analyze_eps);
  analyze->add_option("--s", analyze_s, "Overlap threshold");
  analyze->add_option("--out", analyze_out, "Write the approximated circuit here");

  // experiment
  auto *experiment = app.add_subcommand("experiment", "Bound-report suites");
  experiment->fallthrough();
  std::string exp_suite, exp_fn = "maj";
  int exp_n = 4, exp_count = 5;
  double exp_eps = 0.05;
  experiment->add_option("suite", exp_suite, "One of parity-bound, majority-bound, tv-gap, unitary-gap, nekomata, fourier")
      ->required();
  experiment->add_option("--n", exp_n);
  experiment->add_option("--count", exp_count);
  experiment->add_option("--epsilon", exp_eps);
  experiment->add_option("--fn", exp_fn, "Fourier target: parity or maj");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*synth)
      return cmd_synth(flags, synth_kind, synth_n, synth_k, synth_delta,
                       synth_m, synth_out);
    if (*compile) return cmd_compile(flags, compile_in, compile_out, compile_verify);
    if (*analyze)
      return cmd_analyze(flags, analyze_what, analyze_in, analyze_qubit,
                         analyze_set, analyze_eps, analyze_s, analyze_out);
    if (*experiment) {
      if (exp_suite == "parity-bound")
        return finish_reports(flags, exp_suite, parity_bound_suite(flags, exp_n, exp_count));
      if (exp_suite == "majority-bound")
        return finish_reports(flags, exp_suite,
                              majority_bound_suite(flags, exp_n | 1, exp_count));
      if (exp_suite == "tv-gap")
        return finish_reports(flags, exp_suite, tv_gap_suite(flags, exp_n, exp_eps, exp_count));
      if (exp_suite == "unitary-gap")
        return finish_reports(flags, exp_suite,
                              unitary_gap_suite(flags, std::min(exp_n, 6), exp_eps, exp_count));
      if (exp_suite == "nekomata")
        return finish_reports(flags, exp_suite, nekomata_suite(flags, exp_n, exp_eps));
      if (exp_suite == "fourier") return cmd_experiment_fourier(flags, exp_fn, exp_n);
      throw Error("unknown experiment suite: " + exp_suite);
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
