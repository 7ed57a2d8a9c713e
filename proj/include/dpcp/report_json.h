// Copyright 2026 The dpcp Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
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

#pragma once

// JSON views of the library's result types, used by the command-line tool
// for its outputs and run manifests. Non-finite doubles become null.

#include <nlohmann/json.hpp>

#include "dpcp/eval.h"
#include "dpcp/pointcloud.h"
#include "dpcp/psgm.h"
#include "dpcp/quantities.h"

namespace dpcp {

using Json = nlohmann::ordered_json;

// A double as JSON: numbers stay numbers, NaN and infinities become null.
Json JsonNumber(double value);
Json ToJson(const Vector& v);

Json ToJson(const EstimatorInfo& info);
Json ToJson(const GeometryStats& stats);
Json ToJson(const ConditionReport& report);
Json ToJson(const StepSchedule& schedule);
// Without the trace unless `with_trace`.
Json ToJson(const SolveReport& report, bool with_trace = false);
Json ToJson(const PlaneDetection& detection);
Json ToJson(const RocCurve& curve);
Json ToJson(const BoundaryFit& fit);
Json ToJson(const PhaseGrid& grid);
Json ToJson(const ConditionTrial& trial);

}  // namespace dpcp
