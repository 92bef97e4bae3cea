// Copyright 2026 The PriSPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "prisps/adversary.h"
#include "prisps/errors.h"
#include "prisps/random.h"
#include "str_util.h"

namespace prisps {
namespace {

const std::string& Label(const FeatureWindow& w, InferenceTarget target) {
  return target == InferenceTarget::kGroup ? w.group : w.activity;
}

absl::Status CheckDims(const std::vector<FeatureWindow>& windows) {
  for (const auto& w : windows) {
    if (w.features.size() != windows.front().features.size()) {
      return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                       StrCat("window '", w.window_id, "' has ", w.features.size(),
                              " features, expected ",
                              windows.front().features.size()));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<FeatureWindow>> ObfuscateFeatures(
    const std::vector<FeatureWindow>& windows, const ObfuscationConfig& config) {
  if (!(config.strength >= 0.0 && config.strength <= 1.0)) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InvalidArgument",
                     StrCat("strength ", config.strength, " is outside [0, 1]"));
  }
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < windows.size(); ++i) groups[windows[i].group].push_back(i);
  if (groups.size() < 2) {
    return MakeError(absl::StatusCode::kInvalidArgument, "SingleGroup",
                     "obfuscation needs at least two groups");
  }
  PRISPS_RETURN_IF_ERROR(CheckDims(windows));
  if (config.strength == 0.0) return windows;

  const size_t dims = windows.front().features.size();
  const double n = static_cast<double>(windows.size());
  std::vector<FeatureWindow> out = windows;
  for (size_t d = 0; d < dims; ++d) {
    double pooled_mean = 0.0;
    for (const auto& w : windows) pooled_mean += w.features[d];
    pooled_mean /= n;

    std::map<std::string, double> mean;
    std::map<std::string, double> sd;
    double within_ss = 0.0;
    for (const auto& [g, idx] : groups) {
      double m = 0.0;
      for (size_t i : idx) m += windows[i].features[d];
      m /= static_cast<double>(idx.size());
      double ss = 0.0;
      for (size_t i : idx) ss += (windows[i].features[d] - m) * (windows[i].features[d] - m);
      mean[g] = m;
      sd[g] = std::sqrt(ss / static_cast<double>(idx.size()));
      within_ss += ss;
    }
    const double pooled_sd = std::sqrt(within_ss / n);

    for (const auto& [g, idx] : groups) {
      const double target_mean = mean[g] + config.strength * (pooled_mean - mean[g]);
      const double target_sd = sd[g] + config.strength * (pooled_sd - sd[g]);
      const double ratio = sd[g] > 0.0 ? target_sd / sd[g] : 1.0;
      for (size_t i : idx) {
        out[i].features[d] = target_mean + (windows[i].features[d] - mean[g]) * ratio;
      }
    }
  }
  return out;
}

absl::StatusOr<double> InferAttribute(const std::vector<FeatureWindow>& windows,
                                      InferenceTarget target, uint64_t seed) {
  std::map<std::string, size_t> class_sizes;
  for (const auto& w : windows) ++class_sizes[Label(w, target)];
  if (class_sizes.size() < 2) {
    return MakeError(absl::StatusCode::kInvalidArgument, "InsufficientData",
                     "inference needs at least two classes");
  }
  for (const auto& [label, count] : class_sizes) {
    if (count < 10) {
      return MakeError(absl::StatusCode::kInvalidArgument, "InsufficientData",
                       StrCat("class '", label, "' has only ", count, " windows"));
    }
  }
  PRISPS_RETURN_IF_ERROR(CheckDims(windows));

  std::vector<size_t> order(windows.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(i) - 1));
    std::swap(order[i - 1], order[j]);
  }
  const size_t n_train = (order.size() * 7) / 10;

  const size_t dims = windows.front().features.size();
  std::map<std::string, std::vector<double>> centroids;
  std::map<std::string, size_t> counts;
  for (size_t k = 0; k < n_train; ++k) {
    const FeatureWindow& w = windows[order[k]];
    auto& c = centroids[Label(w, target)];
    c.resize(dims, 0.0);
    for (size_t d = 0; d < dims; ++d) c[d] += w.features[d];
    ++counts[Label(w, target)];
  }
  for (auto& [label, c] : centroids) {
    for (double& v : c) v /= static_cast<double>(counts[label]);
  }

  size_t correct = 0;
  const size_t n_test = order.size() - n_train;
  for (size_t k = n_train; k < order.size(); ++k) {
    const FeatureWindow& w = windows[order[k]];
    const std::string* best = nullptr;
    double best_dist = 0.0;
    for (const auto& [label, c] : centroids) {
      double dist = 0.0;
      for (size_t d = 0; d < dims; ++d) dist += (w.features[d] - c[d]) * (w.features[d] - c[d]);
      if (best == nullptr || dist < best_dist) {
        best = &label;
        best_dist = dist;
      }
    }
    if (best != nullptr && *best == Label(w, target)) ++correct;
  }
  return n_test > 0 ? static_cast<double>(correct) / static_cast<double>(n_test) : 0.0;
}

}  // namespace prisps
