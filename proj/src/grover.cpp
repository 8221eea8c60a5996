#include "qimg/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qimg/error.hpp"
#include "qimg/image_io.hpp"

namespace qimg {
namespace {

// Appends X gates so that the register pattern `target_flips` is applied,
// given `current` flips already in place. Returns the new flip state.
std::uint64_t retarget_flips(Circuit& c, const std::vector<int>& qubits, std::uint64_t current,
                             std::uint64_t target_flips) {
  const std::uint64_t delta = current ^ target_flips;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if ((delta >> j) & 1U) c.x(qubits[j]);
  }
  return target_flips;
}

// -1 on each listed register value (bit j of a value <-> qubits[j]).
void append_value_phase_flips(Circuit& c, const std::vector<int>& qubits,
                              const std::vector<std::uint64_t>& values) {
  const std::uint64_t all = (std::uint64_t{1} << qubits.size()) - 1;
  std::uint64_t flips = 0;
  for (std::uint64_t v : values) {
    flips = retarget_flips(c, qubits, flips, ~v & all);
    c.mcz(qubits);
  }
  retarget_flips(c, qubits, flips, 0);
}

void append_uniform_diffuser(Circuit& c, const std::vector<int>& qubits) {
  for (int q : qubits) c.h(q);
  for (int q : qubits) c.x(q);
  c.mcz(qubits);
  for (int q : qubits) c.x(q);
  for (int q : qubits) c.h(q);
}

std::vector<int> all_qubits(int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_counts(std::uint64_t search_space, std::uint64_t marked) {
  if (marked == 0) throw Error(ErrorCode::NoMarkedItems, "no marked items");
  if (marked > search_space) {
    throw Error(ErrorCode::InvalidArgument, "marked count exceeds search space");
  }
}

double rotation_angle(std::uint64_t search_space, std::uint64_t marked) {
  return std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(search_space)));
}

}  // namespace

std::string_view to_string(SearchMode mode) noexcept {
  switch (mode) {
    case SearchMode::Paper: return "paper";
    case SearchMode::Amplitude: return "amplitude";
    case SearchMode::Semiclassical: return "semiclassical";
  }
  return "unknown";
}

SearchMode parse_search_mode(std::string_view name) {
  if (name == "paper") return SearchMode::Paper;
  if (name == "amplitude") return SearchMode::Amplitude;
  if (name == "semiclassical") return SearchMode::Semiclassical;
  throw Error(ErrorCode::InvalidArgument, "unknown search mode '" + std::string(name) + "'");
}

Circuit build_threshold_oracle(const NeqrLayout& layout, const ThresholdConfig& config) {
  const int limit = 1 << layout.q;
  if (config.threshold() > limit) {
    throw Error(ErrorCode::InvalidArgument,
                "threshold " + std::to_string(config.threshold()) + " exceeds 2^" +
                    std::to_string(layout.q));
  }
  std::vector<std::uint64_t> marked;
  for (int v = 0; v < config.threshold(); ++v) marked.push_back(static_cast<std::uint64_t>(v));

  Circuit oracle(layout.total_qubits());
  append_value_phase_flips(oracle, layout.intensity_qubits(), marked);
  return oracle;
}

Circuit build_bitstring_oracle(int total_qubits, const std::set<std::string>& marked) {
  if (marked.empty()) throw Error(ErrorCode::NoMarkedItems, "oracle needs at least one marked state");
  std::vector<std::uint64_t> values;
  for (const auto& bits : marked) {
    if (bits.size() != static_cast<std::size_t>(total_qubits)) {
      throw Error(ErrorCode::InvalidArgument,
                  "marked bitstring '" + bits + "' has wrong length for " +
                      std::to_string(total_qubits) + " qubits");
    }
    values.push_back(from_bitstring(bits));
  }
  Circuit oracle(total_qubits);
  append_value_phase_flips(oracle, all_qubits(total_qubits), values);
  return oracle;
}

Circuit build_diffuser_uniform(int total_qubits) {
  Circuit diffuser(total_qubits);
  append_uniform_diffuser(diffuser, all_qubits(total_qubits));
  return diffuser;
}

Circuit build_diffuser_about(const Circuit& preparation) {
  const auto qubits = all_qubits(preparation.qubit_count());
  Circuit diffuser = inverse_circuit(preparation);
  for (int q : qubits) diffuser.x(q);
  diffuser.mcz(qubits);
  for (int q : qubits) diffuser.x(q);
  diffuser.append(preparation);
  return diffuser;
}

int iteration_count(std::uint64_t search_space, std::uint64_t marked) {
  check_counts(search_space, marked);
  const double theta = rotation_angle(search_space, marked);
  return static_cast<int>(std::floor(std::numbers::pi / (4.0 * theta)));
}

double success_probability(std::uint64_t search_space, std::uint64_t marked, int iterations) {
  check_counts(search_space, marked);
  if (iterations < 0) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 0");
  const double s = std::sin((2.0 * iterations + 1.0) * rotation_angle(search_space, marked));
  return s * s;
}

SearchResult run_search(const GrayImage& image, const ThresholdConfig& config, SearchMode mode,
                        std::uint64_t shots, std::uint64_t seed) {
  if (mode == SearchMode::Semiclassical) {
    throw Error(ErrorCode::InvalidArgument, "use run_semiclassical_search for semiclassical mode");
  }
  const NeqrLayout layout = NeqrLayout::for_image(image);
  const auto dark = classical_scan(image, config);
  if (dark.empty()) {
    throw Error(ErrorCode::NoMarkedItems,
                "no pixel is below threshold " + std::to_string(config.threshold()));
  }
  const int width = layout.total_qubits();

  SearchResult result;
  result.layout = layout;
  result.shots = shots;
  result.seed = seed;
  result.plan.mode = mode;
  result.plan.marked = dark.size();

  std::optional<StateVector> state;
  std::optional<Circuit> oracle;
  std::optional<Circuit> diffuser;

  if (mode == SearchMode::Paper) {
    std::set<std::string> marked;
    for (const auto& p : dark) {
      marked.insert(to_bitstring(layout.basis_index(p.x, p.y, static_cast<unsigned>(p.intensity)), width));
    }
    result.plan.search_space = std::uint64_t{1} << width;
    Circuit uniform(width);
    for (int q = 0; q < width; ++q) uniform.h(q);
    state = apply_circuit(StateVector::basis(width, 0), uniform);
    oracle = build_bitstring_oracle(width, marked);
    diffuser = build_diffuser_uniform(width);
  } else {
    const PreparedImage prepared = encode_neqr(image);
    result.plan.search_space = static_cast<std::uint64_t>(image.side()) * image.side();
    state = prepare_state(prepared);
    oracle = build_threshold_oracle(layout, config);
    diffuser = build_diffuser_about(prepared.circuit);
  }
  result.plan.iterations = iteration_count(result.plan.search_space, result.plan.marked);

  for (int k = 0; k < result.plan.iterations; ++k) {
    state = apply_circuit(*std::move(state), *oracle);
    ++result.oracle_invocations;
    state = apply_circuit(*std::move(state), *diffuser);
  }

  const auto probs = probabilities(*state);
  const Histogram hist = sample(*state, shots, seed);

  for (std::uint64_t i = 0; i < probs.size(); ++i) {
    const auto decoded = decode_index(i, layout);
    const bool on_image = image.at(decoded.x, decoded.y) == decoded.intensity;
    const bool is_dark = on_image && config.is_dark(decoded.intensity);
    if (is_dark) result.total_dark_probability += probs[i];

    const std::string bits = to_bitstring(i, width);
    const auto hit = hist.counts.find(bits);
    const std::uint64_t count = hit == hist.counts.end() ? 0 : hit->second;
    if (probs[i] <= 1e-12 && count == 0) continue;
    result.outcomes.push_back(RankedOutcome{i, bits, decoded, on_image, is_dark, probs[i], count});
  }
  std::stable_sort(result.outcomes.begin(), result.outcomes.end(),
                   [](const RankedOutcome& a, const RankedOutcome& b) {
                     return a.exact_probability > b.exact_probability;
                   });
  return result;
}

Circuit build_semiclassical_circuit(int n, std::uint64_t position_index) {
  const int width = 2 * n + 1;
  const int ancilla = 2 * n;
  const auto position = all_qubits(2 * n);
  const std::uint64_t side_sq = std::uint64_t{1} << (2 * n);
  if (position_index >= side_sq) throw Error(ErrorCode::InvalidArgument, "position out of range");

  Circuit c(width);
  c.x(ancilla).h(ancilla);
  for (int q : position) c.h(q);

  const int k = iteration_count(side_sq, 1);
  for (int it = 0; it < k; ++it) {
    // Phase kickback: flipping an ancilla in |-> negates the marked branch.
    const std::uint64_t flips = ~position_index & (side_sq - 1);
    retarget_flips(c, position, 0, flips);
    if (position.size() == 2) {
      c.ccx(position[0], position[1], ancilla);
    } else {
      c.mcx(position, ancilla);
    }
    retarget_flips(c, position, flips, 0);
    append_uniform_diffuser(c, position);
  }
  c.h(ancilla).x(ancilla);
  return c;
}

std::vector<SemiclassicalRun> run_semiclassical_search(const GrayImage& image,
                                                       const ThresholdConfig& config,
                                                       std::uint64_t seed) {
  constexpr int kMaxAttempts = 64;
  const int n = image.n();
  const int width = 2 * n + 1;
  const std::uint64_t position_mask = (std::uint64_t{1} << (2 * n)) - 1;
  const std::uint64_t side_sq = position_mask + 1;

  std::vector<SemiclassicalRun> runs;
  for (const auto& target : classical_scan(image, config)) {
    const std::uint64_t pos = static_cast<std::uint64_t>(target.x) |
                              (static_cast<std::uint64_t>(target.y) << n);
    const StateVector final_state =
        apply_circuit(StateVector::basis(width, 0), build_semiclassical_circuit(n, pos));

    // The ancilla is restored to |0>, so the marked branch sits at index `pos`.
    SemiclassicalRun run{target, std::norm(final_state[pos]), iteration_count(side_sq, 1), 0};

    // Measure the position register; a wrong answer is caught by checking
    // the pixel classically and the run is repeated.
    std::uint64_t pixel_seed = splitmix64(seed ^ splitmix64(pos));
    std::uint64_t measured = 0;
    for (;;) {
      if (++run.attempts > kMaxAttempts) {
        throw Error(ErrorCode::InvalidArgument, "semiclassical measurement never hit the marked pixel");
      }
      const Histogram shot = sample(final_state, 1, pixel_seed);
      pixel_seed = splitmix64(pixel_seed);
      measured = from_bitstring(shot.counts.begin()->first) & position_mask;
      if (measured == pos) break;
    }
    const int x = static_cast<int>(measured & ((std::uint64_t{1} << n) - 1));
    const int y = static_cast<int>(measured >> n);
    run.pixel = DarkPixel{x, y, image.at(x, y)};
    runs.push_back(run);
  }
  return runs;
}

std::vector<DarkPixel> semiclassical_pixels(const std::vector<SemiclassicalRun>& runs) {
  std::vector<DarkPixel> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(r.pixel);
  return out;
}

}  // namespace qimg
