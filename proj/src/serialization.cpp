// Copyright 2026 The qfp-gates Authors
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

#include "qfp/serialization.hpp"

#include <cmath>
#include <cstdio>

namespace qfp {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string("expected a number for '") + what + "'");
  return j.get<double>();
}

const char* kCountKeys[kOutcomeCount] = {"n0", "n1", "np", "nm", "npi", "nmi"};

}  // namespace

json to_json(const QfpConfig& cfg) {
  json elements = json::array();
  for (const auto& e : cfg.elements()) {
    if (const auto* w = std::get_if<RfWaveform>(&e)) {
      json hs = json::array();
      for (const auto& h : w->harmonics()) hs.push_back({h.order, h.index, h.delay});
      elements.push_back({{"eom", {{"harmonics", hs}}}});
    } else {
      const auto& s = std::get<ShaperPhases>(e);
      elements.push_back({{"shaper", {{"lo", s.lo}, {"phases", s.phases}, {"ramp", s.ramp}}}});
    }
  }
  return {{"grid", {{"delta_omega", cfg.grid().delta_omega}, {"omega0", cfg.grid().omega0}}},
          {"elements", elements}};
}

QfpConfig config_from_json(const json& j) {
  try {
    const json& g = field(j, "grid");
    const double omega0 = g.contains("omega0") ? number(g.at("omega0"), "omega0") : 0.0;
    const FrequencyGrid grid(omega0, number(field(g, "delta_omega"), "delta_omega"));
    const json& list = field(j, "elements");
    if (!list.is_array()) throw FormatError("'elements' must be an array");
    std::vector<Element> elements;
    for (const auto& e : list) {
      if (e.contains("eom")) {
        std::vector<Harmonic> hs;
        for (const auto& h : field(e.at("eom"), "harmonics")) {
          if (!h.is_array() || h.size() != 3) throw FormatError("harmonic must be [order, index, delay]");
          if (!h[0].is_number_integer()) throw FormatError("harmonic order must be an integer");
          hs.push_back({h[0].get<int>(), number(h[1], "index"), number(h[2], "delay")});
        }
        elements.emplace_back(RfWaveform(std::move(hs)));
      } else if (e.contains("shaper")) {
        const json& s = e.at("shaper");
        const json& lo = field(s, "lo");
        if (!lo.is_number_integer()) throw FormatError("shaper 'lo' must be an integer");
        std::vector<double> phases;
        for (const auto& p : field(s, "phases")) phases.push_back(number(p, "phase"));
        const double ramp = s.contains("ramp") ? number(s.at("ramp"), "ramp") : 0.0;
        elements.emplace_back(ShaperPhases(lo.get<int>(), std::move(phases), ramp));
      } else {
        throw FormatError("element must be an 'eom' or a 'shaper'");
      }
    }
    return QfpConfig(grid, std::move(elements));
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

json to_json(const GateReport& r) {
  json w = json::array();
  for (int m = 0; m < 2; ++m) {
    json row = json::array();
    for (int n = 0; n < 2; ++n) row.push_back({r.w(m, n).real(), r.w(m, n).imag()});
    w.push_back(row);
  }
  return {{"theta", r.theta},       {"phi", r.phi},
          {"lambda", r.lambda},     {"W", w},
          {"success", r.success},   {"fidelity", r.fidelity},
          {"params", r.params},     {"scenario", r.scenario},
          {"seed", r.seed},         {"family", std::string(family_name(r.family))},
          {"refined", r.refined}};
}

GateReport report_from_json(const json& j) {
  try {
    GateReport r;
    r.theta = number(field(j, "theta"), "theta");
    r.phi = number(field(j, "phi"), "phi");
    r.lambda = number(field(j, "lambda"), "lambda");
    const json& w = field(j, "W");
    if (!w.is_array() || w.size() != 2) throw FormatError("'W' must be 2x2");
    for (int m = 0; m < 2; ++m) {
      if (!w[m].is_array() || w[m].size() != 2) throw FormatError("'W' must be 2x2");
      for (int n = 0; n < 2; ++n) {
        const json& z = w[m][n];
        if (!z.is_array() || z.size() != 2) throw FormatError("'W' entries must be [re, im]");
        r.w(m, n) = cplx(number(z[0], "W"), number(z[1], "W"));
      }
    }
    r.success = number(field(j, "success"), "success");
    r.fidelity = number(field(j, "fidelity"), "fidelity");
    for (const auto& p : field(j, "params")) r.params.push_back(number(p, "params"));
    r.scenario = field(j, "scenario").get<std::string>();
    r.seed = field(j, "seed").get<std::uint64_t>();
    if (j.contains("family")) {
      const auto f = j.at("family").get<std::string>();
      if (f != "small" && f != "large") throw FormatError("'family' must be small or large");
      r.family = f == "small" ? SolutionFamily::SmallIndex : SolutionFamily::LargeIndex;
    }
    if (j.contains("refined")) r.refined = j.at("refined").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

json to_json(const TomographyDataset& d) {
  json counts = json::object();
  for (int t = 0; t < kOutcomeCount; ++t) counts[kCountKeys[t]] = d.counts[static_cast<std::size_t>(t)];
  return {{"counts", counts}, {"budget", d.budget}, {"seed", d.seed}, {"dark_rate", d.dark_rate}};
}

TomographyDataset dataset_from_json(const json& j) {
  try {
    TomographyDataset d;
    const json& counts = field(j, "counts");
    for (int t = 0; t < kOutcomeCount; ++t) {
      const double n = number(field(counts, kCountKeys[t]), kCountKeys[t]);
      if (!(n >= 0.0) || !std::isfinite(n)) throw FormatError(std::string("count '") + kCountKeys[t] + "' must be >= 0");
      d.counts[static_cast<std::size_t>(t)] = n;
    }
    d.budget = j.contains("budget") ? number(j.at("budget"), "budget") : 0.0;
    d.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    d.dark_rate = j.contains("dark_rate") ? number(j.at("dark_rate"), "dark_rate") : 0.0;
    return d;
  } catch (const json::exception& e) {
    throw FormatError(std::string("dataset: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qfp
