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

// Command-line front end. Exit status: 0 success, 1 usage error,
// 2 processing error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uns/codec.h"
#include "uns/config_file.h"
#include "uns/metrics.h"
#include "uns/resample.h"
#include "uns/signals.h"
#include "uns/wav.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::filesystem::path ReportDir(const std::string& dir) {
  std::filesystem::create_directories(dir);
  return dir;
}

uns::CodecConfig BaseConfig(const std::string& config_path) {
  return config_path.empty() ? uns::CodecConfig{} : uns::LoadConfig(config_path);
}

std::vector<double> ReadCore(const std::string& path) {
  const uns::WavData w = uns::ReadWav(path);
  return uns::ResampleToCore(w.samples, w.sample_rate);
}

struct EncodeArgs {
  std::string input, output, mode, config, report_dir;
  bool bypass = false;
  bool fdns_only = false;
};

int RunEncode(const EncodeArgs& a) {
  uns::CodecConfig cfg = BaseConfig(a.config);
  cfg.mode = a.mode == "16k" ? uns::BitrateMode::k16kbps : uns::BitrateMode::k12kbps;
  if (a.fdns_only) cfg.ctns_enabled = false;
  const std::vector<double> pcm = ReadCore(a.input);
  if (a.bypass) {
    cfg.bypass = true;
    uns::WriteWav(a.output, uns::BypassRoundTrip(pcm, cfg), cfg.sample_rate_hz);
    std::printf("bypass reconstruction written to %s (%zu samples)\n",
                a.output.c_str(), pcm.size());
    return 0;
  }
  const uns::EncodeResult r = uns::EncodeStream(pcm, cfg);
  uns::WriteFileBytes(a.output, r.stream);
  std::size_t active = 0;
  for (const auto& f : r.frames) active += f.ctns_flag ? 1 : 0;
  const double seconds = static_cast<double>(pcm.size()) / cfg.sample_rate_hz;
  std::printf("%zu frames, %zu bytes (%.2f kbit/s), CTNS on in %zu frames\n",
              r.frames.size(), r.stream.size(),
              seconds > 0 ? r.stream.size() * 8.0 / seconds / 1000.0 : 0.0, active);
  if (!a.report_dir.empty())
    WriteText(ReportDir(a.report_dir) / "frames.csv", uns::FrameDiagnosticsCsv(r.frames));
  return 0;
}

int RunDecode(const std::string& input, const std::string& output,
              const std::string& config) {
  const uns::CodecConfig cfg = BaseConfig(config);
  const auto bytes = uns::ReadFileBytes(input);
  const uns::DecodeResult r = uns::DecodeStream(bytes, cfg.table);
  uns::WriteWav(output, r.pcm, r.header.sample_rate_hz);
  std::printf("%u frames, %zu samples at %u Hz\n", r.header.num_frames,
              r.pcm.size(), r.header.sample_rate_hz);
  return 0;
}

int RunAnalyze(const std::string& ref, const std::string& dec,
               const std::string& report_dir) {
  std::vector<double> a = ReadCore(ref);
  std::vector<double> b = ReadCore(dec);
  if (a.size() != b.size()) {
    std::fprintf(stderr, "note: lengths differ (%zu vs %zu), comparing the overlap\n",
                 a.size(), b.size());
    const std::size_t n = std::min(a.size(), b.size());
    a.resize(n);
    b.resize(n);
  }
  const uns::SegSnrReport r = uns::SegSnr(a, b);
  std::printf("segSNR %.3f dB over %zu segments\n", r.mean_db, r.segments_db.size());
  if (!report_dir.empty()) {
    std::string csv = "segment,snr_db\n";
    for (std::size_t i = 0; i < r.segments_db.size(); ++i)
      csv += std::to_string(i) + "," + std::to_string(r.segments_db[i]) + "\n";
    WriteText(ReportDir(report_dir) / "segsnr.csv", csv);
  }
  return 0;
}

int RunTnsCompare(const std::string& input, const std::string& synthetic,
                  const std::vector<double>& onset_s, std::size_t order,
                  const std::string& report_dir) {
  uns::TestSignal s;
  if (!synthetic.empty()) {
    if (synthetic == "castanet") s = uns::Castanet(3.0, 0.5, 1);
    else if (synthetic == "clicks") s = uns::ClickTrain(3.0, 0.5);
    else if (synthetic == "sine") s = uns::Sinusoid(440.0, 0.5, 3.0);
    else throw CLI::ValidationError("--synthetic", "unknown signal '" + synthetic + "'");
  } else {
    s.name = input;
    s.pcm = ReadCore(input);
    for (double t : onset_s)
      s.onsets.push_back(static_cast<std::size_t>(t * uns::kCoreRate));
  }
  uns::TnsExperimentOptions opt;
  opt.order = order;
  uns::TnsComparisonReport r = uns::TnsDomainExperiment(s.pcm, s.onsets, opt);
  r.signal_name = s.name;
  std::printf("%s: transient-region residual energy MDCT %.2f dB, DFT %.2f dB\n",
              s.name.c_str(), r.mean_transient_mdct_db, r.mean_transient_dft_db);
  if (!report_dir.empty())
    WriteText(ReportDir(report_dir) / "tns_compare.csv", uns::TnsComparisonCsv(r));
  return 0;
}

int RunDesign(const std::string& output, double rate) {
  const uns::EcupqDesign d = uns::DesignEcupqTable(rate);
  WriteText(output, uns::FormatEcupqTable(d.table));
  std::printf("rate %.4f bits, mse %.6f, %d iterations\n", d.entropy_bits, d.mse,
              d.iterations);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UNS low-rate DFT audio codec"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "WAV to .uns bitstream");
  c_enc->add_option("-i,--input", enc.input, "input WAV")->required()->check(CLI::ExistingFile);
  c_enc->add_option("-o,--output", enc.output, "output bitstream")->required();
  c_enc->add_option("-m,--mode", enc.mode, "bit rate")->required()->check(CLI::IsMember({"12k", "16k"}));
  c_enc->add_option("-c,--config", enc.config, "config file")->check(CLI::ExistingFile);
  c_enc->add_option("-r,--report-dir", enc.report_dir, "write frames.csv here");
  c_enc->add_flag("--debug-bypass", enc.bypass, "identity quantizers; writes a WAV instead of a stream");
  c_enc->add_flag("--fdns-only", enc.fdns_only, "never switch CTNS on");

  std::string dec_in, dec_out, dec_config;
  auto* c_dec = app.add_subcommand("decode", ".uns bitstream to 12.8 kHz WAV");
  c_dec->add_option("-i,--input", dec_in, "input bitstream")->required()->check(CLI::ExistingFile);
  c_dec->add_option("-o,--output", dec_out, "output WAV")->required();
  c_dec->add_option("-c,--config", dec_config, "config file (quantizer table)")->check(CLI::ExistingFile);

  std::string an_ref, an_dec, an_dir;
  auto* c_an = app.add_subcommand("analyze", "segmental SNR of a decoded file");
  c_an->add_option("--ref", an_ref, "reference WAV")->required()->check(CLI::ExistingFile);
  c_an->add_option("--decoded", an_dec, "decoded WAV")->required()->check(CLI::ExistingFile);
  c_an->add_option("-r,--report-dir", an_dir, "write segsnr.csv here");

  std::string tc_in, tc_syn, tc_dir;
  std::vector<double> tc_onsets;
  std::size_t tc_order = 16;
  auto* c_tc = app.add_subcommand("tns-compare", "TNS residuals in the MDCT and DFT domains");
  auto* o_in = c_tc->add_option("-i,--input", tc_in, "input WAV")->check(CLI::ExistingFile);
  auto* o_syn = c_tc->add_option("--synthetic", tc_syn, "castanet, clicks or sine");
  o_in->excludes(o_syn);
  c_tc->add_option("--onsets", tc_onsets, "attack times in seconds")->delimiter(',');
  c_tc->add_option("--order", tc_order, "prediction order");
  c_tc->add_option("-r,--report-dir", tc_dir, "write tns_compare.csv here");

  std::string de_out;
  double de_rate = 2.495;
  auto* c_de = app.add_subcommand("design-ecupq", "design the polar quantizer table");
  c_de->add_option("-o,--output", de_out, "table file")->required();
  c_de->add_option("--rate", de_rate, "target rate in bits per real dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_enc) return RunEncode(enc);
    if (*c_dec) return RunDecode(dec_in, dec_out, dec_config);
    if (*c_an) return RunAnalyze(an_ref, an_dec, an_dir);
    if (*c_tc) {
      if (tc_in.empty() && tc_syn.empty()) {
        std::fprintf(stderr, "tns-compare needs --input or --synthetic\n");
        return kExitUsage;
      }
      return RunTnsCompare(tc_in, tc_syn, tc_onsets, tc_order, tc_dir);
    }
    if (*c_de) return RunDesign(de_out, de_rate);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
