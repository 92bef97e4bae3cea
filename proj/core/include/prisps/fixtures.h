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

#ifndef PRISPS_FIXTURES_H_
#define PRISPS_FIXTURES_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "prisps/adversary.h"
#include "prisps/dp.h"
#include "prisps/event.h"
#include "prisps/placement.h"
#include "prisps/random.h"

namespace prisps {

// ---- The "bob" scenario ---------------------------------------------------

inline constexpr char kBobStream[] = "TakeMedicineStr";

// Three days of seven slots: the medicine-taking running example.
std::vector<RawEventRecord> BobEventRecords();
StreamSchema BobStreamSchema();
EventStream BobEventStream();

// Count query for the swallow -> drink -> lay down pattern.
std::string BobPrivateQueryText();
// Public query Bob consents to: his walks.
std::string BobPublicQueryText();

// Scenario files as (relative path, contents), in a fixed order.
std::vector<std::pair<std::string, std::string>> GenerateBobFixture();

// Writes GenerateBobFixture() below `dir`. Error kind: IoError.
absl::Status WriteFixtureFiles(
    const std::string& dir,
    const std::vector<std::pair<std::string, std::string>>& files);

// ---- Synthetic attribute data ---------------------------------------------

struct SyntheticAttributeSpec {
  int groups = 2;
  int dims = 8;
  // Group offset per dimension, in units of the per-cluster noise sd.
  double mean_shift_sigmas = 2.0;
  int windows_per_group = 200;
  int activity_classes = 4;
  double activity_separation = 4.0;
};

// Gaussian clusters per (group, activity): activity a raises dimension
// a mod dims by activity_separation, group g adds g * mean_shift_sigmas to
// every dimension, noise is N(0, 1). Activities cycle within each group.
std::vector<FeatureWindow> GenerateSyntheticAttributes(const SyntheticAttributeSpec& spec,
                                                       uint64_t seed);

// ---- Random instances for oracle tests ------------------------------------

// Events over `alphabet` on one day, one per slot 1..length.
EventStream RandomActivityStream(Rng& rng, int length,
                                 const std::vector<std::string>& alphabet,
                                 int day = 1);

// Connected topology with integer latencies in [0, max_latency]. Node 0 is
// the source, the last node the consumer.
Topology RandomTopology(Rng& rng, int n_nodes, int max_latency = 20);

// Valid config with horizon <= max_horizon and w <= max_w; returns the
// config and its horizon.
std::pair<ScheduleConfig, int> RandomScheduleConfig(Rng& rng, int max_horizon,
                                                    int max_w);

}  // namespace prisps

#endif  // PRISPS_FIXTURES_H_
