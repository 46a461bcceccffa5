// Copyright 2026 The UNS Codec Authors.
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

#include "uns/config_file.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "uns/errors.h"

namespace uns {

namespace {

constexpr int kMaxIncludeDepth = 8;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double ParseDouble(const std::string& v) {
  if (v == "inf") return INFINITY;
  if (v == "-inf") return -INFINITY;
  std::size_t used = 0;
  const double d = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return d;
}

long ParseInt(const std::string& v) {
  std::size_t used = 0;
  const long i = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return i;
}

std::vector<std::string> SplitList(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Trim(item));
  return out;
}

template <typename T, typename F>
std::vector<T> ParseList(const std::string& v, F parse) {
  std::vector<T> out;
  for (const auto& s : SplitList(v)) out.push_back(static_cast<T>(parse(s)));
  return out;
}

template <typename C>
std::string JoinList(const C& c) {
  std::string s;
  for (const auto& v : c) {
    if (!s.empty()) s += ", ";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>)
      s += Num(v);
    else
      s += std::to_string(v);
  }
  return s;
}

template <std::size_t N, typename T>
void AssignArray(std::array<T, N>& dst, const std::vector<T>& src,
                 const std::string& key) {
  if (src.size() != N)
    throw std::invalid_argument(key + " needs " + std::to_string(N) + " values");
  std::copy(src.begin(), src.end(), dst.begin());
}

bool ParseBool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument(v);
}

using Setter = std::function<void(CodecConfig&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> m = {
      {"frame_len", [](CodecConfig& c, const std::string& v) { c.window.frame_len = ParseInt(v); }},
      {"overlap_len", [](CodecConfig& c, const std::string& v) { c.window.overlap_len = ParseInt(v); }},
      {"window_split", [](CodecConfig& c, const std::string& v) {
         if (v == "sqrt") c.window.split = WindowSplit::kSquareRoot;
         else if (v == "analysis") c.window.split = WindowSplit::kAnalysisOnly;
         else throw std::invalid_argument(v);
       }},
      {"sample_rate_hz", [](CodecConfig& c, const std::string& v) { c.sample_rate_hz = static_cast<std::uint32_t>(ParseInt(v)); }},
      {"band_edges", [](CodecConfig& c, const std::string& v) {
         c.layout.upper_edges = ParseList<std::size_t>(v, ParseInt);
       }},
      {"budget_12k", [](CodecConfig& c, const std::string& v) { c.budget.kbps12 = ParseList<int>(v, ParseInt); }},
      {"budget_16k", [](CodecConfig& c, const std::string& v) { c.budget.kbps16 = ParseList<int>(v, ParseInt); }},
      {"mode", [](CodecConfig& c, const std::string& v) {
         if (v == "12k") c.mode = BitrateMode::k12kbps;
         else if (v == "16k") c.mode = BitrateMode::k16kbps;
         else throw std::invalid_argument(v);
       }},
      {"lpc_order", [](CodecConfig& c, const std::string& v) { c.lpc_order = ParseInt(v); }},
      {"fdns_weight", [](CodecConfig& c, const std::string& v) { c.fdns_weight = ParseDouble(v); }},
      {"ctns_weight", [](CodecConfig& c, const std::string& v) { c.ctns_weight = ParseDouble(v); }},
      {"ctns_threshold_db", [](CodecConfig& c, const std::string& v) { c.ctns_threshold_db = ParseDouble(v); }},
      {"ctns_start_bin", [](CodecConfig& c, const std::string& v) { c.ctns_start_bin = ParseInt(v); }},
      {"ctns_enabled", [](CodecConfig& c, const std::string& v) { c.ctns_enabled = ParseBool(v); }},
      {"fer_threshold", [](CodecConfig& c, const std::string& v) { c.fer_threshold = ParseDouble(v); }},
      {"phase_cells_high", [](CodecConfig& c, const std::string& v) {
         AssignArray(c.phase_sets.high, ParseList<int>(v, ParseInt), "phase_cells_high");
       }},
      {"phase_cells_low", [](CodecConfig& c, const std::string& v) {
         AssignArray(c.phase_sets.low, ParseList<int>(v, ParseInt), "phase_cells_low");
       }},
      {"lsf_step", [](CodecConfig& c, const std::string& v) { c.lsf_quantizer.step = ParseDouble(v); }},
      {"lsf_min_gap", [](CodecConfig& c, const std::string& v) { c.lsf_quantizer.min_gap = ParseDouble(v); }},
      {"cplx_step_db", [](CodecConfig& c, const std::string& v) { c.cplx_quantizer.step_db = ParseDouble(v); }},
      {"cplx_min_db", [](CodecConfig& c, const std::string& v) { c.cplx_quantizer.min_db = ParseDouble(v); }},
      {"cplx_max_db", [](CodecConfig& c, const std::string& v) { c.cplx_quantizer.max_db = ParseDouble(v); }},
      {"cplx_phase_cells", [](CodecConfig& c, const std::string& v) { c.cplx_quantizer.phase_cells = static_cast<int>(ParseInt(v)); }},
      {"ecupq.thresholds", [](CodecConfig& c, const std::string& v) {
         AssignArray(c.table.thresholds, ParseList<double>(v, ParseDouble), "ecupq.thresholds");
       }},
      {"ecupq.levels", [](CodecConfig& c, const std::string& v) {
         AssignArray(c.table.levels, ParseList<double>(v, ParseDouble), "ecupq.levels");
       }},
      {"ecupq.design_rate", [](CodecConfig& c, const std::string& v) { c.table.design_rate = ParseDouble(v); }},
      {"ecupq.version", [](CodecConfig& c, const std::string& v) { c.table.version = v; }},
  };
  return m;
}

void Apply(CodecConfig& cfg, const std::string& text, const std::string& origin,
           int depth) {
  if (depth > kMaxIncludeDepth) throw ConfigError(origin + ": includes nested too deeply");
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line.rfind("include ", 0) == 0) {
      std::filesystem::path p = Trim(line.substr(8));
      if (p.is_relative()) p = std::filesystem::path(origin).parent_path() / p;
      std::ifstream f(p);
      if (!f) throw ConfigError(where + ": cannot open include '" + p.string() + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      Apply(cfg, ss.str(), p.string(), depth + 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    const auto it = Setters().find(key);
    if (it == Setters().end()) throw ConfigError(where + ": unknown key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const std::exception& e) {
      throw ConfigError(where + ": bad value for '" + key + "': " + e.what());
    }
  }
}

}  // namespace

CodecConfig ParseConfig(const std::string& text, const std::string& origin,
                        CodecConfig base) {
  Apply(base, text, origin, 0);
  try {
    base.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return base;
}

CodecConfig LoadConfig(const std::string& path, CodecConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ParseConfig(ss.str(), path, std::move(base));
}

std::string FormatEcupqTable(const EcupqTable& t) {
  std::ostringstream os;
  os << "# Entropy-constrained polar quantizer table. thresholds[6] is the\n"
        "# pinned highest threshold; thresholds[7] is the +inf sentinel.\n";
  os << "ecupq.version = " << t.version << "\n";
  os << "ecupq.design_rate = " << Num(t.design_rate) << "\n";
  os << "ecupq.thresholds = " << JoinList(t.thresholds) << "\n";
  os << "ecupq.levels = " << JoinList(t.levels) << "\n";
  return os.str();
}

std::string FormatConfig(const CodecConfig& c, const std::string& table_include) {
  std::ostringstream os;
  os << "# Analysis window: frame length and overlap in samples.\n"
     << "frame_len = " << c.window.frame_len << "\n"
     << "overlap_len = " << c.window.overlap_len << "\n"
     << "# sqrt: square-root taper on analysis and synthesis; analysis: taper once.\n"
     << "window_split = " << (c.window.split == WindowSplit::kSquareRoot ? "sqrt" : "analysis") << "\n"
     << "# Core sampling rate in Hz.\n"
     << "sample_rate_hz = " << c.sample_rate_hz << "\n"
     << "# Upper bin edge (exclusive) of each sub-band.\n"
     << "band_edges = " << JoinList(c.layout.upper_edges) << "\n"
     << "# Per-band bit targets for the scale-factor search.\n"
     << "budget_12k = " << JoinList(c.budget.kbps12) << "\n"
     << "budget_16k = " << JoinList(c.budget.kbps16) << "\n"
     << "mode = " << (c.mode == BitrateMode::k12kbps ? "12k" : "16k") << "\n"
     << "# LPC order shared by the real and complex models.\n"
     << "lpc_order = " << c.lpc_order << "\n"
     << "# Bandwidth-expansion weights of the real and complex LP analyses.\n"
     << "fdns_weight = " << Num(c.fdns_weight) << "\n"
     << "ctns_weight = " << Num(c.ctns_weight) << "\n"
     << "# CTNS switches on when the prediction gain exceeds this value.\n"
     << "ctns_threshold_db = " << Num(c.ctns_threshold_db) << "\n"
     << "# First bin filtered along frequency (first bin above 312 Hz).\n"
     << "ctns_start_bin = " << c.ctns_start_bin << "\n"
     << "ctns_enabled = " << (c.ctns_enabled ? "true" : "false") << "\n"
     << "# Bands whose envelope ratio exceeds this get the fine phase cells.\n"
     << "fer_threshold = " << Num(c.fer_threshold) << "\n"
     << "phase_cells_high = " << JoinList(c.phase_sets.high) << "\n"
     << "phase_cells_low = " << JoinList(c.phase_sets.low) << "\n"
     << "# Scalar LSF quantizer (radians).\n"
     << "lsf_step = " << Num(c.lsf_quantizer.step) << "\n"
     << "lsf_min_gap = " << Num(c.lsf_quantizer.min_gap) << "\n"
     << "# Polar quantizer for the complex LPC coefficients.\n"
     << "cplx_step_db = " << Num(c.cplx_quantizer.step_db) << "\n"
     << "cplx_min_db = " << Num(c.cplx_quantizer.min_db) << "\n"
     << "cplx_max_db = " << Num(c.cplx_quantizer.max_db) << "\n"
     << "cplx_phase_cells = " << c.cplx_quantizer.phase_cells << "\n";
  if (table_include.empty())
    os << FormatEcupqTable(c.table);
  else
    os << "include " << table_include << "\n";
  return os.str();
}

}  // namespace uns
