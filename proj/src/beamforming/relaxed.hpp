// bdris-wpt: beamforming and waveform design for BD-RIS assisted wireless power transfer
// Copyright (C) 2026 The bdris-wpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "bdris/beamforming.hpp"

#include <string>
#include <vector>

namespace bdris::detail
{
struct RelaxedOutcome
{
    CVector theta; // projected onto the feasible shape
    double objective = 0.0;
    double dominance = 0.0;
    int solves = 0;
    std::vector<std::string> flags;
};

// Linearize-and-solve loop on the lifted matrix followed by randomized recovery.
RelaxedOutcome relaxed_beamforming(const CMatrix &a, const CVector &s, const RectifierParams &params,
                                   const Relaxation &relaxation, const CVector &start, bool rank_penalty,
                                   const BeamformerConfig &cfg, std::uint64_t seed);

// g = 1, then nearest unitary symmetric (BD-RIS) or unit modulus (D-RIS) for the surface part.
// Returns false when the vector is degenerate.
bool project_candidate(CVector &theta, const Relaxation &relaxation);
} // namespace bdris::detail
