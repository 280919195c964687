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

#include "qlat/codec.hpp"

#include <fstream>

namespace qlat {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &msg) {
  throw Error("schema error at " + path + ": " + msg);
}

void expect_keys(const json &j, const std::string &path,
                 const std::vector<std::string> &required,
                 const std::vector<std::string> &optional = {}) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (const auto &k : required)
    if (!j.contains(k)) schema_error(path, "missing \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &k = it.key();
    bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                 std::find(optional.begin(), optional.end(), k) != optional.end();
    if (!known) schema_error(path + "/" + k, "unknown field");
  }
}

int read_int(const json &j, const std::string &path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<int>();
}

json mat_to_json(const Mat2 &u) {
  json entries = json::array();
  for (int i = 0; i < 4; ++i)
    entries.push_back(json::array({u.m[i].real(), u.m[i].imag()}));
  return entries;
}

Mat2 mat_from_json(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 4)
    schema_error(path, "expected 4 [re,im] entries (row-major)");
  Mat2 u;
  for (int i = 0; i < 4; ++i) {
    const json &e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      schema_error(path + "/" + std::to_string(i), "expected [re, im]");
    u.m[i] = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return u;
}

}  // namespace

json circuit_to_json(const Circuit &c) {
  json j;
  json layout;
  layout["kind"] = to_string(c.layout.kind);
  layout["n"] = c.layout.cols;
  if (c.layout.kind == LayoutKind::lattice) layout["rows"] = c.layout.rows;
  j["layout"] = layout;
  j["inputs"] = c.inputs;
  json anc = json::array();
  for (const AncillaInit &a : c.ancilla)
    anc.push_back({{"q", a.qubit},
                   {"init", a.init == AncillaState::one ? "one" : "zero"}});
  j["ancilla"] = anc;
  json layers = json::array();
  for (const Layer &l : c.layers) {
    json jl;
    json singles = json::array();
    for (const SingleQubitGate &g : l.singles)
      singles.push_back({{"q", g.target}, {"u", mat_to_json(g.u)}});
    jl["singles"] = singles;
    json czs = json::array();
    for (const MultiCZGate &g : l.czs) czs.push_back(g.support);
    jl["czs"] = czs;
    layers.push_back(jl);
  }
  j["layers"] = layers;
  return j;
}

Circuit circuit_from_json(const json &j) {
  expect_keys(j, "", {"layout", "inputs", "ancilla", "layers"},
              {"restriction_report"});

  const json &jl = j["layout"];
  expect_keys(jl, "/layout", {"kind", "n"}, {"rows"});
  if (!jl["kind"].is_string()) schema_error("/layout/kind", "expected a string");
  const std::string kind = jl["kind"].get<std::string>();
  const int n = read_int(jl["n"], "/layout/n");
  Circuit c;
  if (kind == "all_to_all") {
    c.layout = Layout::all_to_all(n);
  } else if (kind == "line") {
    c.layout = Layout::line(n);
  } else if (kind == "lattice") {
    if (!jl.contains("rows")) schema_error("/layout", "missing \"rows\"");
    c.layout = Layout::lattice(read_int(jl["rows"], "/layout/rows"), n);
  } else {
    schema_error("/layout/kind", "unknown layout kind \"" + kind + "\"");
  }
  if (kind != "lattice" && jl.contains("rows"))
    schema_error("/layout/rows", "rows only valid for lattice");

  if (!j["inputs"].is_array()) schema_error("/inputs", "expected an array");
  for (size_t i = 0; i < j["inputs"].size(); ++i)
    c.inputs.push_back(read_int(j["inputs"][i], "/inputs/" + std::to_string(i)));

  if (!j["ancilla"].is_array()) schema_error("/ancilla", "expected an array");
  for (size_t i = 0; i < j["ancilla"].size(); ++i) {
    const std::string path = "/ancilla/" + std::to_string(i);
    const json &ja = j["ancilla"][i];
    expect_keys(ja, path, {"q", "init"});
    AncillaInit a;
    a.qubit = read_int(ja["q"], path + "/q");
    const std::string init = ja["init"].is_string() ? ja["init"].get<std::string>() : "";
    if (init == "zero")
      a.init = AncillaState::zero;
    else if (init == "one")
      a.init = AncillaState::one;
    else
      schema_error(path + "/init", "expected \"zero\" or \"one\"");
    c.ancilla.push_back(a);
  }

  if (!j["layers"].is_array()) schema_error("/layers", "expected an array");
  for (size_t li = 0; li < j["layers"].size(); ++li) {
    const std::string lpath = "/layers/" + std::to_string(li);
    const json &layer = j["layers"][li];
    expect_keys(layer, lpath, {}, {"singles", "czs"});
    Layer l;
    if (layer.contains("singles")) {
      if (!layer["singles"].is_array())
        schema_error(lpath + "/singles", "expected an array");
      for (size_t gi = 0; gi < layer["singles"].size(); ++gi) {
        const std::string gpath = lpath + "/singles/" + std::to_string(gi);
        const json &jg = layer["singles"][gi];
        expect_keys(jg, gpath, {"q", "u"});
        SingleQubitGate g;
        g.target = read_int(jg["q"], gpath + "/q");
        g.u = mat_from_json(jg["u"], gpath + "/u");
        l.singles.push_back(g);
      }
    }
    if (layer.contains("czs")) {
      if (!layer["czs"].is_array())
        schema_error(lpath + "/czs", "expected an array");
      for (size_t gi = 0; gi < layer["czs"].size(); ++gi) {
        const std::string gpath = lpath + "/czs/" + std::to_string(gi);
        const json &jg = layer["czs"][gi];
        if (!jg.is_array()) schema_error(gpath, "expected an array of qubit ids");
        MultiCZGate g;
        for (size_t qi = 0; qi < jg.size(); ++qi)
          g.support.push_back(read_int(jg[qi], gpath + "/" + std::to_string(qi)));
        l.czs.push_back(std::move(g));
      }
    }
    c.layers.push_back(std::move(l));
  }
  return c;
}

void save_circuit(const std::string &path, const Circuit &c,
                  const json *restriction_report) {
  json j = circuit_to_json(c);
  if (restriction_report) j["restriction_report"] = *restriction_report;
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

CircuitFile load_circuit(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error &e) {
    throw Error("invalid JSON in " + path + ": " + e.what());
  }
  CircuitFile f;
  f.circuit = circuit_from_json(j);
  if (j.contains("restriction_report"))
    f.restriction_report = j["restriction_report"];
  return f;
}

}  // namespace qlat
