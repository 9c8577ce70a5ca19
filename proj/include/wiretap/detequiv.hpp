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

#ifndef WIRETAP_DETEQUIV_HPP
#define WIRETAP_DETEQUIV_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "channel.hpp"
#include "precoder.hpp"

namespace wiretap
{
    // Solution (e, delta) of one link's coupled trace equations
    //   e     = (rho / N) tr{ R (I + delta R)^{-1} }
    //   delta = (rho / M) tr{ S (I + beta e S)^{-1} },   S = T^{1/2} P T^{1/2}.
    struct FixedPoint
    {
        double e = 0.0;
        double delta = 0.0;
        int iterations = 0;
        double residual = 0.0;
    };

    struct FixedPointOptions
    {
        double tolerance = 1e-12;      // max absolute update
        int max_iterations = 10000;
        int stall_window = 10;         // non-decreasing residual steps before damping engages
        double damping = 0.5;
        std::vector<double> *residual_history = nullptr; // optional trace, one entry per iteration
    };

    // Per-antenna large-system mutual information of both links and their clamped difference, in nats.
    struct LslRate
    {
        double i_main = 0.0;
        double i_eave = 0.0;
        double rs = 0.0;
    };

    // T^{1/2} P T^{1/2}
    inline HermitianMatrix effective_covariance(const ChannelStatistics &stats, const Precoder &p)
    {
        if (p.dim() != stats.num_tx())
            throw DimensionMismatch("precoder dimension " + std::to_string(p.dim()) +
                                    " does not match transmit antennas " + std::to_string(stats.num_tx()));
        const ComplexMatrix &ts = stats.t_sqrt().matrix();
        return HermitianMatrix(ts * p.covariance().matrix() * ts);
    }

    inline FixedPoint solve_fixed_point(const ChannelStatistics &stats, const Precoder &p,
                                        const FixedPointOptions &options = {})
    {
        const HermitianMatrix s = effective_covariance(stats, p);
        const double rho = stats.snr();
        if (rho == 0.0)
            return {};

        // Both traces only depend on spectra.
        const RealVector r_eig = eigh(stats.r_corr()).values.cwiseMax(0.0);
        const RealVector s_eig = eigh(s).values.cwiseMax(0.0);
        const double n = static_cast<double>(stats.num_rx());
        const double m = static_cast<double>(stats.num_tx());
        const double beta = stats.beta();

        auto update_e = [&](double delta)
        {
            return rho / n * (r_eig.array() / (1.0 + delta * r_eig.array())).sum();
        };
        auto update_delta = [&](double e)
        {
            return rho / m * (s_eig.array() / (1.0 + beta * e * s_eig.array())).sum();
        };

        FixedPoint fp;
        fp.e = rho;
        fp.delta = rho;
        double previous = std::numeric_limits<double>::infinity();
        int stalled = 0;
        bool damped = false;
        for (int it = 1; it <= options.max_iterations; ++it)
        {
            double e_next = update_e(fp.delta);
            if (damped)
                e_next = fp.e + options.damping * (e_next - fp.e);
            double delta_next = update_delta(e_next);
            if (damped)
                delta_next = fp.delta + options.damping * (delta_next - fp.delta);

            const double residual = std::max(std::abs(e_next - fp.e), std::abs(delta_next - fp.delta));
            fp.e = e_next;
            fp.delta = delta_next;
            fp.iterations = it;
            fp.residual = residual;
            if (options.residual_history)
                options.residual_history->push_back(residual);

            if (!std::isfinite(residual))
                break;
            if (residual <= options.tolerance)
                return fp;

            stalled = residual >= previous ? stalled + 1 : 0;
            if (stalled >= options.stall_window)
                damped = true;
            previous = residual;
        }
        throw NoConvergence("solve_fixed_point: no convergence after " + std::to_string(fp.iterations) +
                            " iterations (residual " + std::to_string(fp.residual) + ")");
    }

    // (1/M) ln det(I + beta e S) + (1/M) ln det(I + delta R) - (beta / rho) delta e
    inline double lsl_mutual_information(const ChannelStatistics &stats, const Precoder &p, const FixedPoint &fp)
    {
        const double rho = stats.snr();
        if (rho == 0.0)
            return 0.0;
        const HermitianMatrix s = effective_covariance(stats, p);
        const Index m = stats.num_tx();
        const Index n = stats.num_rx();
        const double beta = stats.beta();

        const HermitianMatrix tx_term(ComplexMatrix::Identity(m, m) + beta * fp.e * s.matrix());
        const HermitianMatrix rx_term(ComplexMatrix::Identity(n, n) + fp.delta * stats.r_corr().matrix());
        const double dm = static_cast<double>(m);
        return logdet_hpd(tx_term) / dm + logdet_hpd(rx_term) / dm - beta / rho * fp.delta * fp.e;
    }

    // Fixed points and rate of both links for a given precoder.
    struct LslEvaluation
    {
        FixedPoint main;
        FixedPoint eave;
        LslRate rate;
    };

    inline LslEvaluation evaluate_lsl(const ChannelStatistics &stats_m, const ChannelStatistics &stats_e,
                                      const Precoder &p)
    {
        if (stats_m.num_tx() != stats_e.num_tx())
            throw DimensionMismatch("main and eavesdropper links must share the transmit array");
        LslEvaluation out;
        out.main = solve_fixed_point(stats_m, p);
        out.eave = solve_fixed_point(stats_e, p);
        out.rate.i_main = lsl_mutual_information(stats_m, p, out.main);
        out.rate.i_eave = lsl_mutual_information(stats_e, p, out.eave);
        out.rate.rs = std::max(0.0, out.rate.i_main - out.rate.i_eave);
        return out;
    }

    inline LslRate lsl_secrecy_rate(const ChannelStatistics &stats_m, const ChannelStatistics &stats_e,
                                    const Precoder &p)
    {
        return evaluate_lsl(stats_m, stats_e, p).rate;
    }

    // Precoder objective with frozen scaled traces em, ee:
    // (1/M) [ln det(I + beta_M em S_M) - ln det(I + beta_E ee S_E)]^+
    inline double lsl_objective(double em, double ee, const ChannelStatistics &stats_m,
                                const ChannelStatistics &stats_e, const Precoder &p)
    {
        if (stats_m.num_tx() != stats_e.num_tx())
            throw DimensionMismatch("main and eavesdropper links must share the transmit array");
        const Index m = stats_m.num_tx();
        const ComplexMatrix eye = ComplexMatrix::Identity(m, m);
        const HermitianMatrix main_term(eye + stats_m.beta() * em * effective_covariance(stats_m, p).matrix());
        const HermitianMatrix eave_term(eye + stats_e.beta() * ee * effective_covariance(stats_e, p).matrix());
        return std::max(0.0, (logdet_hpd(main_term) - logdet_hpd(eave_term)) / static_cast<double>(m));
    }
}

#endif
