// SPDX-License-Identifier: Apache-2.0
//
// wiretap-lsl: large-system secrecy rates of correlated MIMO wiretap channels
// Copyright (C) 2026 The wiretap-lsl authors
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
// ------------------------------------------------------------------------

#ifndef WIRETAP_PRECODER_HPP
#define WIRETAP_PRECODER_HPP

#include <string>
#include <string_view>
#include <utility>

#include "matdecomp.hpp"

namespace wiretap
{
    enum class Strategy
    {
        Isotropic,
        WaterFilling,
        GsvdBeamforming
    };

    inline constexpr Strategy all_strategies[] = {Strategy::Isotropic, Strategy::WaterFilling,
                                                  Strategy::GsvdBeamforming};

    // Short names used in configuration files and CSV output.
    inline std::string_view to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::Isotropic:
            return "iso";
        case Strategy::WaterFilling:
            return "wf";
        case Strategy::GsvdBeamforming:
            return "gsvd";
        }
        return "?";
    }

    inline Strategy parse_strategy(std::string_view name)
    {
        if (name == "iso")
            return Strategy::Isotropic;
        if (name == "wf")
            return Strategy::WaterFilling;
        if (name == "gsvd")
            return Strategy::GsvdBeamforming;
        throw InvalidArgument("unknown strategy '" + std::string(name) + "' (expected iso, wf or gsvd)");
    }

    inline constexpr double precoder_psd_floor = -1e-10;
    inline constexpr double precoder_trace_slack = 1e-6;

    // Transmit covariance P with tr(P) <= trace_budget.
    class Precoder
    {
    public:
        Precoder(HermitianMatrix p, Strategy strategy, double trace_budget)
            : p_(std::move(p)), strategy_(strategy), trace_budget_(trace_budget)
        {
            if (p_.dim() < 1)
                throw InvalidArgument("Precoder: empty covariance");
            const auto [values, vectors] = eigh(p_);
            if (values(0) < precoder_psd_floor)
                throw NotPsd("Precoder: covariance eigenvalue " + std::to_string(values(0)) + " below " +
                             std::to_string(precoder_psd_floor));
            if (values(0) < 0.0)
                p_ = HermitianMatrix(vectors * values.cwiseMax(0.0).cast<Complex>().asDiagonal() * vectors.adjoint());
            if (p_.trace() > trace_budget_ + precoder_trace_slack)
                throw InvalidArgument("Precoder: trace " + std::to_string(p_.trace()) + " exceeds budget " +
                                      std::to_string(trace_budget_));
        }

        const HermitianMatrix &covariance() const { return p_; }
        Strategy strategy() const { return strategy_; }
        double trace_budget() const { return trace_budget_; }
        Index dim() const { return p_.dim(); }

    private:
        HermitianMatrix p_;
        Strategy strategy_;
        double trace_budget_;
    };
}

#endif
