#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aeria {

// Units used throughout the library: computation in FLOP (floating point
// operations), speeds in FLOPS (FLOP per second), data sizes in bits, data
// rates in bit/s, time in seconds, money in dollars.

struct LayerSpec {
  double compute_flop = 0.0;      // work of the main-branch layer
  double output_size_bits = 0.0;  // size of the layer's output feature map
};

struct ExitBranchSpec {
  int position = 0;           // main-branch layer the branch hangs off, 1..depth
  double compute_flop = 0.0;  // extra work of the branch classifier
};

// Exit probabilities for one confidence threshold. probs[i] is the chance an
// input leaves through branches[i]; rows sum to one. accuracies is optional
// bookkeeping (empty or one entry per branch).
struct ExitProbabilityRow {
  double sigma = 0.0;
  std::vector<double> probs;
  std::vector<double> accuracies;
};

// A profiled multi-exit DNN. The final branch sits at the last layer, so every
// input exits somewhere.
struct MeDnnProfile {
  std::string id;
  double input_size_bits = 0.0;
  std::vector<LayerSpec> layers;
  std::vector<ExitBranchSpec> branches;         // strictly increasing positions
  std::vector<ExitProbabilityRow> exit_probs;   // strictly increasing sigma

  int depth() const { return static_cast<int>(layers.size()); }
};

// Throws DataError on structural problems: empty layers, non-positive layer
// compute, branch positions out of order or not ending at the last layer,
// probability rows that do not sum to one, accuracies outside [0, 1].
void validate(const MeDnnProfile& profile);

// Exact-match lookup of the probability row for sigma. Throws DataError when
// sigma is not one of the profiled thresholds.
const ExitProbabilityRow& exit_row(const MeDnnProfile& profile, double sigma);

// Probability that an input is still alive when layer k starts, k in 1..depth:
// one minus the exit mass of all branches strictly before k.
double forward_prob(const MeDnnProfile& profile, double sigma, int k);

// Probability that the partition output at s still needs forwarding, i.e. the
// input has not exited at any branch at or before s. s in 0..depth.
double survival_prob(const MeDnnProfile& profile, double sigma, int s);

// Expected FLOP executed on the device when the model is split after layer s
// (s = 0: nothing local, s = depth: fully local). Branch work counts on the
// side of the split that hosts the branch.
double device_flop(const MeDnnProfile& profile, double sigma, int s);

// Expected FLOP left for the edge server under the same split.
double edge_flop(const MeDnnProfile& profile, double sigma, int s);

// Size of the tensor crossing the split: the raw input for s = 0, otherwise
// layer s's output.
double output_size_bits(const MeDnnProfile& profile, int s);

// --- synthetic profiles ---

enum class ProbShape {
  Uniform,           // every exit equally likely at every threshold
  ConfidenceSkewed,  // low thresholds exit shallow, high thresholds run deep
};

struct SynthProfileParams {
  std::string id = "synth";
  int layer_count = 12;
  double total_main_flop = 2e9;
  double input_size_bits = 0.4e6;
  std::vector<int> exit_positions;  // empty: quartile positions ending at depth
  double branch_flop_fraction = 0.02;  // branch work as a share of main work
  std::vector<double> sigma_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  ProbShape shape = ProbShape::ConfidenceSkewed;
  double output_decay_to = 0.01;  // last feature map as a share of the input
};

// Deterministic generator: the same params always produce the same profile.
// Main-branch work is split evenly across the segments between consecutive
// exits, then evenly across the layers of each segment.
MeDnnProfile synth_profile(const SynthProfileParams& params);

// Four bundled profiles covering small to giant inference tasks. The FLOP
// totals are illustrative defaults, not measurements.
std::vector<MeDnnProfile> default_catalog();

// JSON (de)serialization. Strings so the JSON library stays out of the API.
MeDnnProfile profile_from_json(const std::string& json_text);
std::string profile_to_json(const MeDnnProfile& profile, int indent = 2);
MeDnnProfile load_profile(const std::string& path);
void save_profile(const MeDnnProfile& profile, const std::string& path);

}  // namespace aeria
