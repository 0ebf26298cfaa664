#include "aeria/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aeria/errors.hpp"
#include "json.hpp"

namespace aeria {

void validate(const MeDnnProfile& p) {
  if (p.id.empty()) throw DataError("profile: empty id");
  if (p.layers.empty()) throw DataError("profile " + p.id + ": no layers");
  if (!(p.input_size_bits > 0))
    throw DataError("profile " + p.id + ": input size must be positive");
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    if (!(p.layers[i].compute_flop > 0))
      throw DataError("profile " + p.id + ": layer " + std::to_string(i + 1) +
                      " compute must be positive");
    if (p.layers[i].output_size_bits < 0)
      throw DataError("profile " + p.id + ": layer " + std::to_string(i + 1) +
                      " output size is negative");
  }
  if (p.branches.empty()) throw DataError("profile " + p.id + ": no branches");
  int prev = 0;
  for (const auto& b : p.branches) {
    if (b.position <= prev)
      throw DataError("profile " + p.id +
                      ": branch positions must be strictly increasing");
    if (b.position > p.depth())
      throw DataError("profile " + p.id + ": branch position " +
                      std::to_string(b.position) + " beyond depth");
    if (b.compute_flop < 0)
      throw DataError("profile " + p.id + ": branch compute is negative");
    prev = b.position;
  }
  if (p.branches.back().position != p.depth())
    throw DataError("profile " + p.id +
                    ": the last branch must sit at the last layer");
  if (p.exit_probs.empty())
    throw DataError("profile " + p.id + ": no exit probability rows");
  double prev_sigma = -1.0;
  for (const auto& row : p.exit_probs) {
    if (row.sigma <= prev_sigma)
      throw DataError("profile " + p.id +
                      ": sigma values must be strictly increasing");
    prev_sigma = row.sigma;
    if (row.probs.size() != p.branches.size())
      throw DataError("profile " + p.id + ": probability row for sigma " +
                      std::to_string(row.sigma) + " has " +
                      std::to_string(row.probs.size()) + " entries, expected " +
                      std::to_string(p.branches.size()));
    double sum = 0.0;
    for (double v : row.probs) {
      if (v < 0)
        throw DataError("profile " + p.id + ": negative exit probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw DataError("profile " + p.id + ": probabilities for sigma " +
                      std::to_string(row.sigma) + " sum to " +
                      std::to_string(sum) + ", expected 1");
    if (!row.accuracies.empty()) {
      if (row.accuracies.size() != p.branches.size())
        throw DataError("profile " + p.id + ": accuracy row size mismatch");
      for (double a : row.accuracies)
        if (a < 0 || a > 1)
          throw DataError("profile " + p.id + ": accuracy outside [0, 1]");
    }
  }
}

const ExitProbabilityRow& exit_row(const MeDnnProfile& p, double sigma) {
  for (const auto& row : p.exit_probs)
    if (row.sigma == sigma) return row;
  std::ostringstream msg;
  msg << "profile " << p.id << ": no exit probabilities for sigma " << sigma
      << "; profiled thresholds:";
  for (const auto& row : p.exit_probs) msg << ' ' << row.sigma;
  throw DataError(msg.str());
}

double forward_prob(const MeDnnProfile& p, double sigma, int k) {
  if (k < 1 || k > p.depth())
    throw std::out_of_range("forward_prob: layer index " + std::to_string(k) +
                            " outside 1.." + std::to_string(p.depth()));
  const auto& row = exit_row(p, sigma);
  double alive = 1.0;
  for (std::size_t i = 0; i < p.branches.size(); ++i)
    if (p.branches[i].position <= k - 1) alive -= row.probs[i];
  return alive;
}

double survival_prob(const MeDnnProfile& p, double sigma, int s) {
  if (s < 0 || s > p.depth())
    throw std::out_of_range("survival_prob: split " + std::to_string(s) +
                            " outside 0.." + std::to_string(p.depth()));
  const auto& row = exit_row(p, sigma);
  double alive = 1.0;
  for (std::size_t i = 0; i < p.branches.size(); ++i)
    if (p.branches[i].position <= s) alive -= row.probs[i];
  return alive;
}

double device_flop(const MeDnnProfile& p, double sigma, int s) {
  if (s < 0 || s > p.depth())
    throw std::out_of_range("device_flop: split " + std::to_string(s) +
                            " outside 0.." + std::to_string(p.depth()));
  const auto& row = exit_row(p, sigma);
  double total = 0.0;
  for (int k = 1; k <= s; ++k)
    total += forward_prob(p, sigma, k) * p.layers[k - 1].compute_flop;
  for (std::size_t i = 0; i < p.branches.size(); ++i)
    if (p.branches[i].position <= s)
      total += row.probs[i] * p.branches[i].compute_flop;
  return total;
}

double edge_flop(const MeDnnProfile& p, double sigma, int s) {
  if (s < 0 || s > p.depth())
    throw std::out_of_range("edge_flop: split " + std::to_string(s) +
                            " outside 0.." + std::to_string(p.depth()));
  const auto& row = exit_row(p, sigma);
  double total = 0.0;
  for (int k = s + 1; k <= p.depth(); ++k)
    total += forward_prob(p, sigma, k) * p.layers[k - 1].compute_flop;
  for (std::size_t i = 0; i < p.branches.size(); ++i)
    if (p.branches[i].position > s)
      total += row.probs[i] * p.branches[i].compute_flop;
  return total;
}

double output_size_bits(const MeDnnProfile& p, int s) {
  if (s < 0 || s > p.depth())
    throw std::out_of_range("output_size_bits: split " + std::to_string(s) +
                            " outside 0.." + std::to_string(p.depth()));
  return s == 0 ? p.input_size_bits : p.layers[s - 1].output_size_bits;
}

MeDnnProfile synth_profile(const SynthProfileParams& params) {
  if (params.layer_count < 1)
    throw DataError("synth_profile: layer_count must be >= 1");
  if (!(params.total_main_flop > 0))
    throw DataError("synth_profile: total_main_flop must be positive");
  const int g = params.layer_count;

  std::vector<int> exits = params.exit_positions;
  if (exits.empty()) {
    for (int q = 1; q <= 4; ++q) {
      int pos = std::max(1, (g * q) / 4);
      if (exits.empty() || pos > exits.back()) exits.push_back(pos);
    }
    if (exits.back() != g) exits.push_back(g);
  }
  if (exits.back() != g)
    throw DataError("synth_profile: the last exit must sit at the last layer");

  MeDnnProfile p;
  p.id = params.id;
  p.input_size_bits = params.input_size_bits;

  // Even FLOP share per inter-exit segment, spread across the segment layers.
  std::vector<double> layer_flop(g, 0.0);
  const double per_segment =
      params.total_main_flop / static_cast<double>(exits.size());
  int seg_start = 0;  // exclusive of the previous exit
  for (int e : exits) {
    const int len = e - seg_start;
    for (int k = seg_start + 1; k <= e; ++k)
      layer_flop[k - 1] = per_segment / len;
    seg_start = e;
  }

  const double shrink = std::pow(params.output_decay_to, 1.0 / g);
  double out = params.input_size_bits;
  for (int k = 1; k <= g; ++k) {
    out *= shrink;
    p.layers.push_back({layer_flop[k - 1], out});
  }

  const double branch_flop =
      params.branch_flop_fraction * params.total_main_flop;
  for (int e : exits) p.branches.push_back({e, branch_flop});

  const std::size_t branch_count = p.branches.size();
  for (double sigma : params.sigma_grid) {
    ExitProbabilityRow row;
    row.sigma = sigma;
    if (params.shape == ProbShape::Uniform || branch_count == 1) {
      row.probs.assign(branch_count, 1.0 / static_cast<double>(branch_count));
    } else {
      // Geometric tilt: low thresholds favor shallow exits, high thresholds
      // push mass toward the deep ones.
      const double kappa = 4.0 * (sigma - 0.5);
      double sum = 0.0;
      for (std::size_t m = 0; m < branch_count; ++m) {
        row.probs.push_back(std::exp(kappa * static_cast<double>(m)));
        sum += row.probs.back();
      }
      for (double& v : row.probs) v /= sum;
    }
    for (std::size_t m = 0; m < branch_count; ++m) {
      const double depth_share =
          static_cast<double>(p.branches[m].position) / g;
      row.accuracies.push_back(
          std::min(0.99, 0.60 + 0.34 * depth_share + 0.05 * sigma));
    }
    p.exit_probs.push_back(std::move(row));
  }

  validate(p);
  return p;
}

std::vector<MeDnnProfile> default_catalog() {
  std::vector<MeDnnProfile> catalog;
  SynthProfileParams small;
  small.id = "me-small";
  small.layer_count = 8;
  small.total_main_flop = 0.6e9;
  small.input_size_bits = 0.2e6;
  small.exit_positions = {2, 4, 6, 8};
  catalog.push_back(synth_profile(small));

  SynthProfileParams medium;
  medium.id = "me-medium";
  medium.layer_count = 12;
  medium.total_main_flop = 2.5e9;
  medium.input_size_bits = 0.4e6;
  medium.exit_positions = {3, 6, 9, 12};
  catalog.push_back(synth_profile(medium));

  SynthProfileParams large;
  large.id = "me-large";
  large.layer_count = 16;
  large.total_main_flop = 9e9;
  large.input_size_bits = 1.2e6;
  large.exit_positions = {4, 8, 12, 16};
  catalog.push_back(synth_profile(large));

  SynthProfileParams giant;
  giant.id = "me-giant";
  giant.layer_count = 12;
  giant.total_main_flop = 32e9;
  giant.input_size_bits = 2.4e6;
  giant.exit_positions = {3, 6, 9, 12};
  catalog.push_back(synth_profile(giant));
  return catalog;
}

namespace {

using nlohmann::json;

json profile_to_json_obj(const MeDnnProfile& p) {
  json j;
  j["id"] = p.id;
  j["input_size_bits"] = p.input_size_bits;
  j["layers"] = json::array();
  for (const auto& l : p.layers)
    j["layers"].push_back({{"compute_flop", l.compute_flop},
                           {"output_size_bits", l.output_size_bits}});
  j["branches"] = json::array();
  for (const auto& b : p.branches)
    j["branches"].push_back(
        {{"position", b.position}, {"compute_flop", b.compute_flop}});
  j["exit_probabilities"] = json::array();
  for (const auto& row : p.exit_probs) {
    json r{{"sigma", row.sigma}, {"probs", row.probs}};
    if (!row.accuracies.empty()) r["accuracies"] = row.accuracies;
    j["exit_probabilities"].push_back(std::move(r));
  }
  return j;
}

MeDnnProfile profile_from_json_obj(const json& j) {
  MeDnnProfile p;
  try {
    p.id = j.at("id").get<std::string>();
    p.input_size_bits = j.at("input_size_bits").get<double>();
    for (const auto& l : j.at("layers"))
      p.layers.push_back({l.at("compute_flop").get<double>(),
                          l.at("output_size_bits").get<double>()});
    for (const auto& b : j.at("branches"))
      p.branches.push_back(
          {b.at("position").get<int>(), b.at("compute_flop").get<double>()});
    for (const auto& r : j.at("exit_probabilities")) {
      ExitProbabilityRow row;
      row.sigma = r.at("sigma").get<double>();
      row.probs = r.at("probs").get<std::vector<double>>();
      if (r.contains("accuracies"))
        row.accuracies = r.at("accuracies").get<std::vector<double>>();
      p.exit_probs.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("profile json: ") + e.what());
  }
  validate(p);
  return p;
}

}  // namespace

MeDnnProfile profile_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataError("profile json: parse error");
  return profile_from_json_obj(j);
}

std::string profile_to_json(const MeDnnProfile& p, int indent) {
  return profile_to_json_obj(p).dump(indent);
}

MeDnnProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open profile file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return profile_from_json(buf.str());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void save_profile(const MeDnnProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write profile file: " + path);
  out << profile_to_json(p) << '\n';
}

}  // namespace aeria
