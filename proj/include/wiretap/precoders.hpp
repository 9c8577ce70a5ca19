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

#ifndef WIRETAP_PRECODERS_HPP
#define WIRETAP_PRECODERS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "detequiv.hpp"

namespace wiretap
{
    // Per-subchannel powers and the water level / Lagrange multiplier that produced them.
    struct PowerAllocation
    {
        RealVector levels;
        double mu = 0.0;
    };

    inline Precoder isotropic_precoder(Index m)
    {
        if (m < 1)
            throw InvalidArgument("isotropic_precoder: m must be >= 1");
        return Precoder(HermitianMatrix::identity(m), Strategy::Isotropic, static_cast<double>(m));
    }

    // Classic water-filling: levels[i] = max(0, 1/mu - 1/gains[i]) with sum(levels) = budget.
    // The active set is found exactly by sorting the gains.
    inline PowerAllocation waterfill_levels(const RealVector &gains, double budget)
    {
        if (!(budget > 0.0) || !std::isfinite(budget))
            throw InvalidArgument("waterfill_levels: budget must be positive");
        if (!gains.allFinite() || (gains.size() > 0 && gains.minCoeff() < 0.0))
            throw InvalidArgument("waterfill_levels: gains must be finite and nonnegative");

        std::vector<Index> order;
        for (Index i = 0; i < gains.size(); ++i)
            if (gains(i) > 0.0)
                order.push_back(i);
        if (order.empty())
            throw AllZeroGains("waterfill_levels: every subchannel gain is zero");
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return gains(a) > gains(b); });

        // largest k whose water level clears the k-th weakest active subchannel
        double inv_gain_sum = 0.0;
        double water = 0.0;
        std::size_t active = 0;
        for (std::size_t k = 0; k < order.size(); ++k)
        {
            const double inv_gain = 1.0 / gains(order[k]);
            const double candidate = (budget + inv_gain_sum + inv_gain) / static_cast<double>(k + 1);
            if (candidate <= inv_gain)
                break;
            inv_gain_sum += inv_gain;
            water = candidate;
            active = k + 1;
        }

        // level_i = (budget + sum_j (1/g_j - 1/g_i)) / active avoids cancelling water against 1/g_i
        PowerAllocation out;
        out.mu = 1.0 / water;
        out.levels = RealVector::Zero(gains.size());
        for (std::size_t k = 0; k < active; ++k)
        {
            const double inv_gain = 1.0 / gains(order[k]);
            double spread = 0.0;
            for (std::size_t j = 0; j < active; ++j)
                spread += 1.0 / gains(order[j]) - inv_gain;
            out.levels(order[k]) = std::max(0.0, (budget + spread) / static_cast<double>(active));
        }
        return out;
    }

    // Which gains feed the water-filling step. Squared uses the eigenvalues of beta_M E_M T_M
    // (squared singular values of sqrt(beta_M E_M) T_M^{1/2}); Literal uses the singular values.
    enum class WaterfillGain
    {
        Squared,
        Literal
    };

    // Water-filling over the main link's statistical eigenmodes, ignoring the eavesdropper.
    inline Precoder waterfill_precoder(const ChannelStatistics &stats_m, double em,
                                       WaterfillGain gain_mode = WaterfillGain::Squared)
    {
        if (!(em > 0.0) || !std::isfinite(em))
            throw InvalidArgument("waterfill_precoder: em must be positive");
        const Index m = stats_m.num_tx();
        const auto [values, vectors] = eigh(HermitianMatrix(stats_m.beta() * em * stats_m.t_corr().matrix()));
        RealVector gains = values.cwiseMax(0.0);
        if (gain_mode == WaterfillGain::Literal)
            gains = gains.cwiseSqrt();
        const PowerAllocation alloc = waterfill_levels(gains, static_cast<double>(m));
        return Precoder(HermitianMatrix(vectors * alloc.levels.cast<Complex>().asDiagonal() * vectors.adjoint()),
                        Strategy::WaterFilling, static_cast<double>(m));
    }

    // Subchannels whose advantage a_i - b_i is below this are ties.
    inline constexpr double gsvd_tie_tolerance = 1e-12;

    // Secrecy-optimal power on each GSVD subchannel for multiplier mu:
    //
    //   p_i = 1/2 [sign(a_i - b_i) + 1] [(-1 + sqrt(1 - 4 a_i b_i + 4 (a_i - b_i) a_i b_i / (ln2 mu v_i))) / (2 a_i b_i)]^+
    //
    // with a_i = sigma_m2[i], b_i = sigma_e2[i]. Evaluated in the rationalized form
    // 2 (k - 1) / (1 + sqrt(1 + 4 a b (k - 1))),  k = (a - b) / (ln2 mu v), which is the same
    // expression, stays accurate when a b is small and reduces to k - 1 at a b = 0.
    inline RealVector gsvd_power_allocation(const RealVector &sigma_m2, const RealVector &sigma_e2,
                                            const RealVector &v_diag, double mu)
    {
        const Index m = sigma_m2.size();
        if (sigma_e2.size() != m || v_diag.size() != m)
            throw DimensionMismatch("gsvd_power_allocation: vector sizes differ");
        if (!(mu > 0.0))
            throw InvalidArgument("gsvd_power_allocation: mu must be positive");
        RealVector levels = RealVector::Zero(m);
        for (Index i = 0; i < m; ++i)
        {
            const double a = sigma_m2(i);
            const double b = sigma_e2(i);
            if (!(v_diag(i) > 0.0))
                throw InvalidArgument("gsvd_power_allocation: v_diag entries must be positive");
            if (a - b <= gsvd_tie_tolerance)
                continue; // no secrecy gain on this subchannel
            const double k = (a - b) / (std::numbers::ln2 * mu * v_diag(i));
            if (k <= 1.0)
                continue; // below the water level, negative discriminant included
            const double discriminant = 1.0 + 4.0 * a * b * (k - 1.0);
            levels(i) = 2.0 * (k - 1.0) / (1.0 + std::sqrt(discriminant));
        }
        return levels;
    }

    struct GsvdDesign
    {
        GsvdFactorization factorization;
        PowerAllocation allocation;
        Precoder precoder;
    };

    inline constexpr double gsvd_mu_min = 1e-12;
    inline constexpr double gsvd_mu_max = 1e12;
    inline constexpr double gsvd_power_tolerance = 1e-8;
    inline constexpr int gsvd_bisection_steps = 200;

    // GSVD of sqrt(beta_M em) T_M^{1/2} and sqrt(beta_E ee) T_E^{1/2}, power on the subchannels
    // with a_i > b_i, mu bisected (in log scale) so that sum levels[i] v_i = M. The returned
    // covariance is that of x = V^{-H} s, i.e. V^{-H} diag(levels) V^{-1}.
    inline GsvdDesign gsvd_design(const ChannelStatistics &stats_m, const ChannelStatistics &stats_e, double em,
                                  double ee)
    {
        if (stats_m.num_tx() != stats_e.num_tx())
            throw DimensionMismatch("main and eavesdropper links must share the transmit array");
        if (!(em >= 0.0) || !(ee >= 0.0))
            throw InvalidArgument("gsvd_design: em and ee must be nonnegative");
        const Index m = stats_m.num_tx();
        const double budget = static_cast<double>(m);

        const ComplexMatrix a = std::sqrt(stats_m.beta() * em) * stats_m.t_sqrt().matrix();
        const ComplexMatrix b = std::sqrt(stats_e.beta() * ee) * stats_e.t_sqrt().matrix();
        GsvdFactorization f = gsvd(a, b);

        const RealVector sm2 = f.sigma_m.cwiseAbs2();
        const RealVector se2 = f.sigma_e.cwiseAbs2();
        const RealVector &vd = f.v_inv_gram_diag;
        auto total_power = [&](double mu) { return gsvd_power_allocation(sm2, se2, vd, mu).dot(vd); };

        PowerAllocation alloc;
        alloc.levels = RealVector::Zero(m);
        alloc.mu = gsvd_mu_max;
        if (((sm2 - se2).array() > gsvd_tie_tolerance).any())
        {
            double lo = std::log(gsvd_mu_min);
            double hi = std::log(gsvd_mu_max);
            if (total_power(gsvd_mu_min) < budget - gsvd_power_tolerance || total_power(gsvd_mu_max) > budget)
                throw BisectionFailure("gsvd_design: budget not bracketed by mu in [1e-12, 1e12]");
            double mu = std::exp(0.5 * (lo + hi));
            double power = total_power(mu);
            for (int step = 0; step < gsvd_bisection_steps; ++step)
            {
                mu = std::exp(0.5 * (lo + hi));
                power = total_power(mu);
                if (power == budget || hi - lo <= 1e-15)
                    break;
                // total power decreases in mu
                if (power > budget)
                    lo = std::log(mu);
                else
                    hi = std::log(mu);
            }
            if (std::abs(power - budget) > gsvd_power_tolerance)
                throw BisectionFailure("gsvd_design: total power " + std::to_string(power) + " misses budget " +
                                       std::to_string(budget));
            alloc.mu = mu;
            alloc.levels = gsvd_power_allocation(sm2, se2, vd, mu);
        }

        const ComplexMatrix v_inv_h = f.v.adjoint().partialPivLu().solve(ComplexMatrix::Identity(m, m));
        const ComplexMatrix px = v_inv_h * alloc.levels.cast<Complex>().asDiagonal() * v_inv_h.adjoint();
        Precoder precoder(HermitianMatrix(px), Strategy::GsvdBeamforming, budget);
        return {std::move(f), std::move(alloc), std::move(precoder)};
    }

    inline Precoder gsvd_precoder(const ChannelStatistics &stats_m, const ChannelStatistics &stats_e, double em,
                                  double ee)
    {
        return gsvd_design(stats_m, stats_e, em, ee).precoder;
    }

    struct OptimizeOptions
    {
        double rate_tolerance = 1e-9;
        int max_outer_iterations = 100;
        WaterfillGain waterfill_gain = WaterfillGain::Squared;
    };

    struct OptimizationResult
    {
        Precoder precoder;
        LslEvaluation evaluation;
        int outer_iterations = 0;
        bool converged = true;
    };

    // Alternates fixed-point statistics and precoder construction, starting from P = I, until the
    // large-system secrecy rate changes by less than the tolerance. A non-converged result is
    // returned with converged = false.
    inline OptimizationResult optimize(Strategy strategy, const ChannelStatistics &stats_m,
                                       const ChannelStatistics &stats_e, const OptimizeOptions &options = {})
    {
        Precoder p = isotropic_precoder(stats_m.num_tx());
        LslEvaluation eval = evaluate_lsl(stats_m, stats_e, p);
        if (strategy == Strategy::Isotropic)
            return {std::move(p), eval, 1, true};

        double previous = eval.rate.rs;
        for (int it = 1; it <= options.max_outer_iterations; ++it)
        {
            p = strategy == Strategy::WaterFilling
                    ? waterfill_precoder(stats_m, eval.main.e, options.waterfill_gain)
                    : gsvd_precoder(stats_m, stats_e, eval.main.e, eval.eave.e);
            eval = evaluate_lsl(stats_m, stats_e, p);
            if (std::abs(eval.rate.rs - previous) < options.rate_tolerance)
                return {std::move(p), eval, it, true};
            previous = eval.rate.rs;
        }
        return {std::move(p), eval, options.max_outer_iterations, false};
    }
}

#endif
