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

#include "bdris/channel_model.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

#include <cmath>

namespace bdris::testing
{
inline CVector random_cvector(int n, Rng &rng, double variance = 1.0)
{
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v(i) = rng.complex_normal(variance);
    return v;
}

inline CMatrix random_symmetric(int m, Rng &rng)
{
    CMatrix a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = rng.complex_normal();
    return 0.5 * (a + a.transpose());
}

// Random symmetric purely imaginary impedance j X with X real symmetric.
inline CMatrix random_reactance(int m, Rng &rng, double scale = 50.0)
{
    RMatrix x(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            x(i, j) = scale * rng.normal();
    x = 0.5 * (x + x.transpose()).eval();
    return kJ * x.cast<cd>();
}

inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel_err(cd a, cd b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Rayleigh-faded channel pair with unit-variance entries, no path loss.
inline ChannelRealization rayleigh_channels(int n, int m, Rng &rng)
{
    ChannelRealization ch;
    ch.incident.resize(n, m);
    ch.reflective.resize(n, m);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k)
        {
            ch.incident(i, k) = rng.complex_normal();
            ch.reflective(i, k) = rng.complex_normal();
        }
    return ch;
}
} // namespace bdris::testing
