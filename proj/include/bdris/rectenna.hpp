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
#include "bdris/types.hpp"

#include <vector>

namespace bdris
{
struct RectifierParams
{
    double k2 = 0.17;
    double k4 = 957.25;

    void validate() const;
};

inline constexpr double kDefaultOversampling = 64.0;

// DC current from the fourth-order diode model in the frequency domain.
double idc(const CVector &s, const CVector &h, const RectifierParams &params);

// Same quantity from the per-subcarrier products y_n = s_n h_n.
double idc_from_products(const CVector &y, const RectifierParams &params);

// r_k = sum_n y_{n+k} conj(y_n), k = 0..N-1.
CVector autocorrelation(const CVector &y);

// K2/2 r_0 + 3K4/8 r_0^2 + 3K4/4 sum_{k>=1} |r_k|^2
double idc_from_autocorrelation(const CVector &r, const RectifierParams &params);

// Received signal sampled over one period 1/df.
std::vector<double> received_signal(const CVector &s, const CVector &h, const CarrierPlan &plan,
                                    double oversampling = kDefaultOversampling);

double idc_time_oracle(const CVector &s, const CVector &h, const CarrierPlan &plan, const RectifierParams &params,
                       double oversampling = kDefaultOversampling);

// d idc / d s_n for phase-matched real amplitudes.
// Wirtinger derivative d i_dc / d conj(y_n) for received products y_n = s_n h_n.
CVector idc_product_gradient(const CVector &y, const RectifierParams &params);

RVector waveform_gradient(const RVector &s_amp, const RVector &h_amp, const RectifierParams &params);

double papr_db(const CVector &s, const CVector &h, const CarrierPlan &plan, double oversampling = kDefaultOversampling);
} // namespace bdris
