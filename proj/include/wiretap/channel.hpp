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

#ifndef WIRETAP_CHANNEL_HPP
#define WIRETAP_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "matdecomp.hpp"
#include "quadrature.hpp"

namespace wiretap
{
    // Uniform linear array with a Gaussian power azimuth spectrum. Angles in degrees.
    struct ArraySpec
    {
        Index num_antennas = 1;
        double spacing_wavelengths = 1.0;
        double mean_angle_deg = 0.0;
        double angle_spread_deg = 5.0;
    };

    inline void validate(const ArraySpec &spec)
    {
        if (spec.num_antennas < 1)
            throw InvalidArgument("ArraySpec: num_antennas must be >= 1");
        if (!std::isfinite(spec.spacing_wavelengths) || spec.spacing_wavelengths < 0.0)
            throw InvalidArgument("ArraySpec: spacing_wavelengths must be finite and >= 0");
        if (!std::isfinite(spec.mean_angle_deg))
            throw InvalidArgument("ArraySpec: mean_angle_deg must be finite");
        if (!std::isfinite(spec.angle_spread_deg) || spec.angle_spread_deg <= 0.0)
            throw InvalidArgument("ArraySpec: angle_spread_deg must be finite and > 0");
    }

    inline constexpr double quadrature_tolerance = 1e-9;

    namespace detail
    {
        inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

        // Unnormalized lag integrals c_k = int_{-pi}^{pi} exp(2 pi i d k sin(phi) - (phi - theta)^2 / (2 Delta^2)) dphi
        // for k = 0 .. num_lags-1.
        inline std::vector<Complex> correlation_lags(const GaussLegendreRule &rule, Index num_lags,
                                                     double spacing, double theta, double spread)
        {
            std::vector<Complex> lags(static_cast<std::size_t>(num_lags), Complex(0.0, 0.0));
            const double pi = std::numbers::pi;
            const double inv_two_var = 1.0 / (2.0 * spread * spread);
            for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            {
                const double phi = pi * rule.nodes[j];
                const double dphi = phi - theta;
                const double weight = pi * rule.weights[j] * std::exp(-dphi * dphi * inv_two_var);
                if (weight == 0.0)
                    continue;
                const double phase_step = 2.0 * pi * spacing * std::sin(phi);
                for (Index k = 0; k < num_lags; ++k)
                {
                    const double phase = phase_step * static_cast<double>(k);
                    lags[static_cast<std::size_t>(k)] += weight * Complex(std::cos(phase), std::sin(phase));
                }
            }
            return lags;
        }
    }

    // Transmit correlation matrix of a ULA under a Gaussian power azimuth spectrum.
    // Entry (a,b) is the lag-(a-b) integral divided by the lag-0 integral, so the diagonal is
    // exactly 1 and the matrix is Toeplitz Hermitian. The mean angle is wrapped to [-180, 180].
    inline HermitianMatrix gen_correlation(const ArraySpec &spec)
    {
        validate(spec);
        const Index m = spec.num_antennas;
        const double theta = detail::deg_to_rad(std::remainder(spec.mean_angle_deg, 360.0));
        const double spread = detail::deg_to_rad(spec.angle_spread_deg);

        const auto coarse = detail::correlation_lags(gauss_legendre_4096(), m, spec.spacing_wavelengths, theta, spread);
        const auto fine = detail::correlation_lags(gauss_legendre_8192(), m, spec.spacing_wavelengths, theta, spread);

        const double c0 = coarse[0].real();
        const double f0 = fine[0].real();
        if (!(c0 > 0.0) || !(f0 > 0.0))
            throw QuadratureFailure("gen_correlation: vanishing angular weight (lag-0 integral underflow)");

        double err = 0.0;
        for (std::size_t k = 0; k < coarse.size(); ++k)
            err = std::max(err, std::abs(coarse[k] / c0 - fine[k] / f0));
        if (err > quadrature_tolerance)
            throw QuadratureFailure("gen_correlation: estimated quadrature error " + std::to_string(err) +
                                    " exceeds " + std::to_string(quadrature_tolerance));

        ComplexMatrix t(m, m);
        for (Index a = 0; a < m; ++a)
        {
            t(a, a) = Complex(1.0, 0.0);
            for (Index b = 0; b < a; ++b)
            {
                const Complex v = coarse[static_cast<std::size_t>(a - b)] / c0;
                t(a, b) = v;
                t(b, a) = std::conj(v);
            }
        }
        HermitianMatrix out(t);
        if (eigh(out).values(0) < psd_floor)
            throw NotPsd("gen_correlation: correlation matrix has an eigenvalue below " + std::to_string(psd_floor));
        return out;
    }

    // Statistical CSI of one link: linear SNR, transmit and receive correlation.
    class ChannelStatistics
    {
    public:
        ChannelStatistics(double snr, HermitianMatrix t_corr, HermitianMatrix r_corr)
            : snr_(snr), t_corr_(std::move(t_corr)), r_corr_(std::move(r_corr))
        {
            if (!std::isfinite(snr_) || snr_ < 0.0)
                throw InvalidArgument("ChannelStatistics: snr must be finite and >= 0");
            if (t_corr_.dim() < 1 || r_corr_.dim() < 1)
                throw InvalidArgument("ChannelStatistics: antenna counts must be >= 1");
            t_sqrt_ = hermitian_sqrt(t_corr_);
            r_sqrt_ = hermitian_sqrt(r_corr_);
        }

        double snr() const { return snr_; }
        Index num_rx() const { return r_corr_.dim(); }
        Index num_tx() const { return t_corr_.dim(); }
        double beta() const { return static_cast<double>(num_rx()) / static_cast<double>(num_tx()); }
        const HermitianMatrix &t_corr() const { return t_corr_; }
        const HermitianMatrix &r_corr() const { return r_corr_; }
        const HermitianMatrix &t_sqrt() const { return t_sqrt_; }
        const HermitianMatrix &r_sqrt() const { return r_sqrt_; }

        ChannelStatistics with_snr(double snr) const
        {
            ChannelStatistics out = *this;
            if (!std::isfinite(snr) || snr < 0.0)
                throw InvalidArgument("ChannelStatistics: snr must be finite and >= 0");
            out.snr_ = snr;
            return out;
        }

    private:
        double snr_;
        HermitianMatrix t_corr_;
        HermitianMatrix r_corr_;
        HermitianMatrix t_sqrt_;
        HermitianMatrix r_sqrt_;
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    // Link with R = I (receive side uncorrelated) and transmit correlation from the array model.
    inline ChannelStatistics make_statistics(double snr, const ArraySpec &tx, Index num_rx)
    {
        if (num_rx < 1)
            throw InvalidArgument("make_statistics: num_rx must be >= 1");
        return ChannelStatistics(snr, gen_correlation(tx), HermitianMatrix::identity(num_rx));
    }

    // Per-worker random stream. Streams for different (seed, index) pairs are seeded through
    // std::seed_seq so that they are statistically independent.
    using RngStream = std::mt19937_64;

    inline RngStream make_stream(std::uint64_t seed, std::uint64_t stream_index)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
        return RngStream(seq);
    }

    // i.i.d. CN(0,1) entries: real and imaginary parts each N(0, 1/2).
    template <class Urbg>
    ComplexMatrix complex_gaussian_matrix(Index rows, Index cols, Urbg &rng)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        ComplexMatrix w(rows, cols);
        for (Index c = 0; c < cols; ++c)
            for (Index r = 0; r < rows; ++r)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                w(r, c) = Complex(re, im);
            }
        return w;
    }

    struct ChannelRealization
    {
        ComplexMatrix h; // N x M
    };

    // Kronecker model H = sqrt(rho / M) R^{1/2} W T^{1/2}.
    template <class Urbg>
    ChannelRealization sample_channel(const ChannelStatistics &stats, Urbg &rng)
    {
        const Index n = stats.num_rx();
        const Index m = stats.num_tx();
        const ComplexMatrix w = complex_gaussian_matrix(n, m, rng);
        const double scale = std::sqrt(stats.snr() / static_cast<double>(m));
        return {scale * (stats.r_sqrt().matrix() * w * stats.t_sqrt().matrix())};
    }
}

#endif
