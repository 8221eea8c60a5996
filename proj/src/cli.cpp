#include "qimg/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qimg/complexity.hpp"
#include "qimg/error.hpp"
#include "qimg/grover.hpp"
#include "qimg/image_io.hpp"
#include "qimg/neqr.hpp"
#include "qimg/qasm.hpp"

namespace qimg {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Manifest {
  std::string command;
  std::optional<std::string> image;
  std::optional<int> threshold;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
};

// SOURCE_DATE_EPOCH pins the timestamp for reproducible builds of outputs.
std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class T>
json or_null(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json manifest_json(const Manifest& m) {
  return json{
      {"command", m.command},
      {"image", or_null(m.image)},
      {"threshold", or_null(m.threshold)},
      {"mode", or_null(m.mode)},
      {"shots", or_null(m.shots)},
      {"seed", or_null(m.seed)},
      {"tool_version", kToolVersion},
      {"timestamp", utc_timestamp()},
  };
}

json envelope(const Manifest& m) {
  return json{{"schema_version", kSchemaVersion}, {"manifest", manifest_json(m)}};
}

json layout_json(const NeqrLayout& layout) {
  return json{{"n", layout.n}, {"q", layout.q}, {"total_qubits", layout.total_qubits()}};
}

json pixel_json(const DarkPixel& p) {
  return json{{"x", p.x}, {"y", p.y}, {"intensity", p.intensity}};
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f.flush()) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

std::string histogram_csv(const SearchResult& r) {
  std::string csv = "bitstring,x,y,intensity,exact_probability,count\n";
  for (const auto& o : r.outcomes) {
    csv += o.bitstring + "," + std::to_string(o.pixel.x) + "," + std::to_string(o.pixel.y) + "," +
           std::to_string(o.pixel.intensity) + "," + shortest(o.exact_probability) + "," +
           std::to_string(o.sampled_count) + "\n";
  }
  return csv;
}

json search_json(const SearchResult& r, const Manifest& m) {
  json doc = envelope(m);
  doc["plan"] = {{"mode", std::string(to_string(r.plan.mode))},
                 {"search_space", r.plan.search_space},
                 {"marked", r.plan.marked},
                 {"iterations", r.plan.iterations}};
  doc["layout"] = layout_json(r.layout);
  doc["oracle_invocations"] = r.oracle_invocations;
  doc["total_dark_probability"] = r.total_dark_probability;
  doc["predicted_success_probability"] =
      success_probability(r.plan.search_space, r.plan.marked, r.plan.iterations);
  doc["shots"] = r.shots;
  json outcomes = json::array();
  int rank = 0;
  for (const auto& o : r.outcomes) {
    outcomes.push_back({{"rank", ++rank},
                        {"index", o.index},
                        {"bitstring", o.bitstring},
                        {"x", o.pixel.x},
                        {"y", o.pixel.y},
                        {"intensity", o.pixel.intensity},
                        {"on_image", o.on_image},
                        {"dark", o.dark},
                        {"exact_probability", o.exact_probability},
                        {"count", o.sampled_count}});
  }
  doc["outcomes"] = std::move(outcomes);
  return doc;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapacityExceeded:
    case ErrorCode::NoMarkedItems:
      return 3;
    default:
      return 2;
  }
}

void print_pixels(std::ostream& out, const std::vector<DarkPixel>& pixels) {
  for (const auto& p : pixels) out << p.x << " " << p.y << " " << p.intensity << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"NEQR image encoding and Grover dark-pixel search", "qimg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string image_path;
  int threshold = ThresholdConfig::kPaperThreshold;
  std::uint64_t seed = 0;
  std::uint64_t shots = 1024;
  std::string mode_name;
  std::string out_path;
  std::string csv_path;
  std::string qasm_path;
  std::string state_path;
  int report_n = 1;
  int report_q = kGrayscaleBits;
  std::uint64_t report_marked = 0;

  auto* encode = app.add_subcommand("encode", "Build the NEQR preparation circuit and state");
  encode->add_option("--image", image_path, "PGM image (P2 or P5)")->required();
  encode->add_option("--qasm", qasm_path, "Write the circuit as OpenQASM 2.0");
  encode->add_option("--state", state_path, "Write nonzero amplitudes as JSON");

  auto* search = app.add_subcommand("search", "Grover search for pixels below the threshold");
  search->add_option("--image", image_path, "PGM image (P2 or P5)")->required();
  search->add_option("--threshold", threshold, "Dark iff intensity < threshold")
      ->check(CLI::Range(0, 256));
  search->add_option("--mode", mode_name, "paper | amplitude")
      ->required()
      ->check(CLI::IsMember({"paper", "amplitude"}));
  search->add_option("--shots", shots, "Measurement shots")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "Sampling seed")->required();
  search->add_option("--out", out_path, "SearchResult JSON path")->required();
  search->add_option("--csv", csv_path, "Histogram CSV path (default: --out with .csv)");

  auto* semi = app.add_subcommand("semiclassical", "Per-pixel Grover over the position register");
  semi->add_option("--image", image_path, "PGM image (P2 or P5)")->required();
  semi->add_option("--threshold", threshold, "Dark iff intensity < threshold")
      ->check(CLI::Range(0, 256));
  semi->add_option("--seed", seed, "Measurement seed")->required();
  semi->add_option("--out", out_path, "JSON summary path");

  auto* scan = app.add_subcommand("scan", "Classical dark-pixel scan");
  scan->add_option("--image", image_path, "PGM image (P2 or P5)")->required();
  scan->add_option("--threshold", threshold, "Dark iff intensity < threshold")
      ->check(CLI::Range(0, 256));
  scan->add_option("--out", out_path, "JSON summary path");

  auto* report = app.add_subcommand("report", "Query-complexity report");
  report->add_option("--n", report_n, "log2 of the image side")->required();
  report->add_option("--q", report_q, "Intensity bits");
  report->add_option("--marked", report_marked, "Number of marked states")->required();
  report->add_option("--out", out_path, "Also write the JSON here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return 1;
  }

  Manifest manifest;
  try {
    if (encode->parsed()) {
      manifest = {"encode", image_path, {}, {}, {}, {}};
      const auto image = load_pgm(image_path);
      const auto prepared = encode_neqr(image);
      if (!qasm_path.empty()) write_file(qasm_path, circuit_to_qasm(prepared.circuit));
      if (!state_path.empty()) {
        const auto state = prepare_state(prepared);
        json amps = json::array();
        for (std::uint64_t i = 0; i < state.dimension(); ++i) {
          if (std::abs(state[i]) <= 1e-12) continue;
          amps.push_back({{"index", i},
                          {"bitstring", to_bitstring(i, state.qubit_count())},
                          {"re", state[i].real()},
                          {"im", state[i].imag()}});
        }
        json doc = envelope(manifest);
        doc["layout"] = layout_json(prepared.layout);
        doc["qubit_count"] = state.qubit_count();
        doc["gate_count"] = prepared.circuit.size();
        doc["amplitudes"] = std::move(amps);
        write_json(state_path, doc);
      }
      if (qasm_path.empty() && state_path.empty()) out << circuit_to_qasm(prepared.circuit);
      return 0;
    }

    if (search->parsed()) {
      manifest = {"search", image_path, threshold, mode_name, shots, seed};
      const auto image = load_pgm(image_path);
      const auto result =
          run_search(image, ThresholdConfig(threshold), parse_search_mode(mode_name), shots, seed);
      write_json(out_path, search_json(result, manifest));
      const fs::path csv = csv_path.empty() ? fs::path(out_path).replace_extension(".csv")
                                            : fs::path(csv_path);
      write_file(csv, histogram_csv(result));

      out << "mode " << mode_name << ": N=" << result.plan.search_space
          << " M=" << result.plan.marked << " k=" << result.plan.iterations
          << " dark probability " << shortest(result.total_dark_probability) << "\n";
      for (std::uint64_t i = 0; i < result.plan.marked && i < result.outcomes.size(); ++i) {
        const auto& o = result.outcomes[i];
        out << o.bitstring << " -> (" << o.pixel.x << ", " << o.pixel.y << ") intensity "
            << o.pixel.intensity << " p=" << shortest(o.exact_probability)
            << " count=" << o.sampled_count << "\n";
      }
      return 0;
    }

    if (semi->parsed()) {
      manifest = {"semiclassical", image_path, threshold, std::string("semiclassical"), {}, seed};
      const auto image = load_pgm(image_path);
      const auto runs = run_semiclassical_search(image, ThresholdConfig(threshold), seed);
      print_pixels(out, semiclassical_pixels(runs));
      if (!out_path.empty()) {
        json doc = envelope(manifest);
        json pixels = json::array();
        for (const auto& r : runs) {
          json p = pixel_json(r.pixel);
          p["marked_probability"] = r.marked_probability;
          p["iterations"] = r.iterations;
          p["attempts"] = r.attempts;
          pixels.push_back(std::move(p));
        }
        doc["count"] = runs.size();
        doc["pixels"] = std::move(pixels);
        write_json(out_path, doc);
      }
      return 0;
    }

    if (scan->parsed()) {
      manifest = {"scan", image_path, threshold, {}, {}, {}};
      const auto image = load_pgm(image_path);
      const auto dark = classical_scan(image, ThresholdConfig(threshold));
      print_pixels(out, dark);
      if (!out_path.empty()) {
        json doc = envelope(manifest);
        json pixels = json::array();
        for (const auto& p : dark) pixels.push_back(pixel_json(p));
        doc["count"] = dark.size();
        doc["pixels"] = std::move(pixels);
        write_json(out_path, doc);
      }
      return 0;
    }

    if (report->parsed()) {
      manifest = {"report", {}, {}, {}, {}, {}};
      const auto r = complexity_report(report_n, report_q, report_marked);
      json doc = envelope(manifest);
      doc["report"] = {{"n", r.n},
                       {"q", r.q},
                       {"marked", r.marked},
                       {"search_space", r.search_space},
                       {"grover_queries", r.grover_queries},
                       {"classical_comparisons", r.classical_comparisons},
                       {"literal_grover", r.literal_grover},
                       {"literal_classical", r.literal_classical},
                       {"literal_formulas_ambiguous", r.literal_formulas_ambiguous}};
      out << doc.dump(2) << "\n";
      if (!out_path.empty()) write_json(out_path, doc);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return 1;
}

}  // namespace qimg
