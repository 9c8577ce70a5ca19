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

#ifndef WIRETAP_MONTECARLO_HPP
#define WIRETAP_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "precoders.hpp"

namespace wiretap
{
    // Sample mean of a per-antenna quantity in nats, with its standard error.
    struct McEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        std::size_t num_realizations = 0;
        std::uint64_t seed = 0;
    };

    // Realizations are drawn in blocks of this size, block b from stream (seed, b).
    inline constexpr std::size_t mc_block_size = 256;

    struct McOptions
    {
        unsigned num_workers = 0; // 0: hardware concurrency
    };

    namespace detail
    {
        // Running moments of one block, merged in block order (Chan et al. pairwise update).
        struct Moments
        {
            double count = 0.0;
            double mean = 0.0;
            double m2 = 0.0;

            void add(double x)
            {
                count += 1.0;
                const double d = x - mean;
                mean += d / count;
                m2 += d * (x - mean);
            }

            void merge(const Moments &o)
            {
                if (o.count == 0.0)
                    return;
                const double total = count + o.count;
                const double d = o.mean - mean;
                mean += d * o.count / total;
                m2 += o.m2 + d * d * count * o.count / total;
                count = total;
            }
        };

        // Runs body(block) for block = 0..num_blocks-1 on a pool of workers. Blocks are
        // independent, so the assignment of blocks to workers does not affect results.
        template <class Body>
        void for_each_block(std::size_t num_blocks, unsigned num_workers, Body &&body)
        {
            unsigned workers = num_workers ? num_workers : std::max(1u, std::thread::hardware_concurrency());
            workers = static_cast<unsigned>(std::min<std::size_t>(workers, num_blocks));
            if (workers <= 1)
            {
                for (std::size_t b = 0; b < num_blocks; ++b)
                    body(b);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&]
                                  {
                    try
                    {
                        for (std::size_t b = next++; b < num_blocks; b = next++)
                            body(b);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    } });
            for (auto &t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
        }

        inline McEstimate finish(const Moments &m, std::uint64_t seed)
        {
            McEstimate out;
            out.mean = m.mean;
            out.num_realizations = static_cast<std::size_t>(m.count);
            out.seed = seed;
            out.std_error = m.count > 1.0 ? std::sqrt(m.m2 / (m.count - 1.0) / m.count) : 0.0;
            return out;
        }
    }

    // (1/M) ln det(I_N + H P H^H) for one realization.
    inline double realization_mi(const ComplexMatrix &h, const ComplexMatrix &p)
    {
        const Index n = h.rows();
        const HermitianMatrix gram(ComplexMatrix::Identity(n, n) + h * p * h.adjoint());
        return logdet_hpd(gram) / static_cast<double>(h.cols());
    }

    // Mean over n realizations of the per-antenna mutual information of one link.
    inline McEstimate mc_ergodic_mi(const ChannelStatistics &stats, const Precoder &p, std::size_t n,
                                    std::uint64_t seed, const McOptions &options = {})
    {
        if (n < 1)
            throw InvalidArgument("mc_ergodic_mi: need at least one realization");
        if (p.dim() != stats.num_tx())
            throw DimensionMismatch("mc_ergodic_mi: precoder dimension does not match transmit antennas");
        const std::size_t num_blocks = (n + mc_block_size - 1) / mc_block_size;
        std::vector<detail::Moments> blocks(num_blocks);
        const ComplexMatrix &cov = p.covariance().matrix();

        detail::for_each_block(num_blocks, options.num_workers, [&](std::size_t b)
                               {
            RngStream rng = make_stream(seed, b);
            const std::size_t count = std::min(mc_block_size, n - b * mc_block_size);
            detail::Moments &acc = blocks[b];
            for (std::size_t k = 0; k < count; ++k)
                acc.add(realization_mi(sample_channel(stats, rng).h, cov)); });

        detail::Moments total;
        for (const auto &b : blocks)
            total.merge(b);
        return detail::finish(total, seed);
    }

    // [E{I_M} - E{I_E}]^+ with the clamp applied after averaging. Both links draw from the
    // same seed; standard errors are combined in quadrature.
    inline McEstimate mc_secrecy_rate(const ChannelStatistics &stats_m, const ChannelStatistics &stats_e,
                                      const Precoder &p, std::size_t n, std::uint64_t seed,
                                      const McOptions &options = {})
    {
        const McEstimate main = mc_ergodic_mi(stats_m, p, n, seed, options);
        const McEstimate eave = mc_ergodic_mi(stats_e, p, n, seed, options);
        McEstimate out;
        out.mean = std::max(0.0, main.mean - eave.mean);
        out.std_error = std::hypot(main.std_error, eave.std_error);
        out.num_realizations = n;
        out.seed = seed;
        return out;
    }

    struct ValidationRow
    {
        double snr_db = 0.0;
        Strategy strategy = Strategy::Isotropic;
        double rs_lsl = 0.0; // nats per antenna
        double rs_mc = 0.0;
        double std_error = 0.0;
        bool flagged = false;
    };

    // Agreement rule between the two pipelines.
    inline bool lsl_mc_disagree(double rs_lsl, double rs_mc, double std_error)
    {
        return std::abs(rs_lsl - rs_mc) > std::max(3.0 * std_error, 0.02 * rs_mc);
    }

    // Runs the large-system and Monte Carlo pipelines at every grid SNR (dB) for each strategy.
    // `make_links(snr_db)` returns the pair of link statistics for that point.
    template <class LinkFactory>
    std::vector<ValidationRow> validate_lsl(LinkFactory &&make_links, std::span<const double> snr_grid_db,
                                            std::span<const Strategy> strategies, std::size_t n,
                                            std::uint64_t seed)
    {
        std::vector<ValidationRow> rows;
        for (double snr_db : snr_grid_db)
        {
            const auto [stats_m, stats_e] = make_links(snr_db);
            for (Strategy s : strategies)
            {
                const OptimizationResult opt = optimize(s, stats_m, stats_e);
                const McEstimate mc = mc_secrecy_rate(stats_m, stats_e, opt.precoder, n, seed);
                ValidationRow row;
                row.snr_db = snr_db;
                row.strategy = s;
                row.rs_lsl = opt.evaluation.rate.rs;
                row.rs_mc = mc.mean;
                row.std_error = mc.std_error;
                row.flagged = lsl_mc_disagree(row.rs_lsl, row.rs_mc, row.std_error);
                rows.push_back(row);
            }
        }
        return rows;
    }
}

#endif
