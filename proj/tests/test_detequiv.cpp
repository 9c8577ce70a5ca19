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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <wiretap/detequiv.hpp>
#include <wiretap/montecarlo.hpp>

#include "test_helpers.hpp"

using namespace wiretap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ChannelStatistics white(double rho, Index m, Index n)
    {
        return ChannelStatistics(rho, HermitianMatrix::identity(m), HermitianMatrix::identity(n));
    }

    Precoder full(Index m) { return Precoder(HermitianMatrix::identity(m), Strategy::Isotropic, double(m)); }

    // T = R = P = I: e solves beta e^2 + (1 + rho - rho beta) e - rho = 0 and delta = rho / (1 + beta e).
    double white_e(double rho, double beta)
    {
        const double b = 1.0 + rho - rho * beta;
        return (-b + std::sqrt(b * b + 4.0 * beta * rho)) / (2.0 * beta);
    }
}

TEST_CASE("scalar fixed point is the golden ratio conjugate")
{
    const FixedPoint fp = solve_fixed_point(white(1.0, 1, 1), full(1));
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK_THAT(fp.e, WithinAbs(golden, 1e-12));
    CHECK_THAT(fp.delta, WithinAbs(golden, 1e-12));
    CHECK(fp.residual <= 1e-12);
}

TEST_CASE("fixed point at zero SNR is zero")
{
    const FixedPoint fp = solve_fixed_point(white(0.0, 3, 2), full(3));
    CHECK(fp.e == 0.0);
    CHECK(fp.delta == 0.0);
    CHECK(lsl_mutual_information(white(0.0, 3, 2), full(3), fp) == 0.0);
}

TEST_CASE("square white channel has a closed-form fixed point")
{
    const FixedPoint fp = solve_fixed_point(white(10.0, 4, 4), full(4));
    CHECK_THAT(fp.e, WithinAbs((-1.0 + std::sqrt(41.0)) / 2.0, 1e-10));
    CHECK_THAT(fp.delta, WithinAbs((-1.0 + std::sqrt(41.0)) / 2.0, 1e-10));
}

TEST_CASE("white channel fixed point matches the quadratic over a grid")
{
    for (double rho : {0.01, 0.1, 0.3, 1.0, 3.0, 10.0, 100.0})
        for (auto [m, n] : {std::pair<Index, Index>{4, 1}, {4, 2}, {4, 4}, {2, 4}, {2, 6}, {5, 5}, {3, 12}})
        {
            const ChannelStatistics stats = white(rho, m, n);
            const FixedPoint fp = solve_fixed_point(stats, full(m));
            const double e = white_e(rho, stats.beta());
            CHECK_THAT(fp.e, WithinAbs(e, 1e-10 * std::max(1.0, e)));
            CHECK_THAT(fp.delta, WithinAbs(rho / (1.0 + stats.beta() * e), 1e-10 * std::max(1.0, rho)));
        }
}

TEST_CASE("scalar mutual information closed form")
{
    const ChannelStatistics stats = white(1.0, 1, 1);
    const FixedPoint fp = solve_fixed_point(stats, full(1));
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double expected = 2.0 * std::log(1.0 + golden) - golden * golden;
    CHECK_THAT(lsl_mutual_information(stats, full(1), fp), WithinAbs(expected, 1e-10));
    // the rounded inputs 1.6180340, 0.3819660 give the same value to 1e-7
    CHECK_THAT(expected, WithinAbs(2.0 * std::log(1.6180340) - 0.3819660, 1e-7));
}

TEST_CASE("fixed point residual decreases")
{
    const ChannelStatistics stats = make_statistics(db_to_linear(10.0), {6, 1.0, 40.0, 5.0}, 6);
    std::vector<double> history;
    FixedPointOptions opts;
    opts.residual_history = &history;
    const FixedPoint fp = solve_fixed_point(stats, full(6), opts);
    REQUIRE(history.size() == static_cast<std::size_t>(fp.iterations));
    REQUIRE(history.size() >= 4);
    for (std::size_t k = 1; 2 * k <= history.size(); ++k)
        CHECK(history[2 * k - 1] <= history[k - 1]);
}

TEST_CASE("fixed point reports non-convergence")
{
    FixedPointOptions opts;
    opts.max_iterations = 2;
    CHECK_THROWS_AS(solve_fixed_point(white(10.0, 4, 4), full(4), opts), NoConvergence);
}

TEST_CASE("fixed point rejects a mismatched precoder")
{
    CHECK_THROWS_AS(solve_fixed_point(white(1.0, 4, 4), full(3)), DimensionMismatch);
}

TEST_CASE("mutual information is unitarily invariant")
{
    const Index m = 5, n = 3;
    const HermitianMatrix t = test::random_hpd(m, 11);
    const HermitianMatrix r = test::random_hpd(n, 12);
    const HermitianMatrix p = test::random_psd(m, 3, 13);
    const double scale = m / p.trace();
    const Precoder prec(HermitianMatrix(scale * p.matrix()), Strategy::Isotropic, double(m));

    const ComplexMatrix u = test::random_unitary(m, 14);
    const ComplexMatrix w = test::random_unitary(n, 15);
    const ChannelStatistics a(4.0, t, r);
    const ChannelStatistics b(4.0, HermitianMatrix(u * t.matrix() * u.adjoint()),
                              HermitianMatrix(w * r.matrix() * w.adjoint()));
    // T^{1/2} P T^{1/2} keeps its spectrum when P rotates with T
    const Precoder prec_b(HermitianMatrix(u * prec.covariance().matrix() * u.adjoint()), Strategy::Isotropic,
                          double(m));
    const double ia = lsl_mutual_information(a, prec, solve_fixed_point(a, prec));
    const double ib = lsl_mutual_information(b, prec_b, solve_fixed_point(b, prec_b));
    CHECK_THAT(ia, WithinAbs(ib, 1e-12));
}

TEST_CASE("mutual information is nondecreasing in SNR")
{
    const ChannelStatistics base = make_statistics(1.0, {4, 1.0, 40.0, 5.0}, 3);
    double previous = 0.0;
    for (double db = -20.0; db <= 40.0; db += 2.5)
    {
        const ChannelStatistics s = base.with_snr(db_to_linear(db));
        const double mi = lsl_mutual_information(s, full(4), solve_fixed_point(s, full(4)));
        CHECK(mi >= previous - 1e-12);
        previous = mi;
    }
}

TEST_CASE("identical links have zero secrecy rate")
{
    const ChannelStatistics s = make_statistics(db_to_linear(5.0), {4, 1.0, 40.0, 5.0}, 4);
    const LslRate rate = lsl_secrecy_rate(s, s, full(4));
    CHECK(rate.rs == 0.0);
    CHECK(rate.i_main == rate.i_eave);
}

TEST_CASE("a much stronger eavesdropper clamps the rate to zero")
{
    const ChannelStatistics main = make_statistics(db_to_linear(-10.0), {4, 1.0, 40.0, 5.0}, 4);
    const ChannelStatistics eave = make_statistics(db_to_linear(30.0), {4, 1.0, 40.0, 5.0}, 4);
    const LslRate rate = lsl_secrecy_rate(main, eave, full(4));
    CHECK(rate.i_eave > rate.i_main);
    CHECK(rate.rs == 0.0);
}

TEST_CASE("frozen-statistics objective")
{
    const ChannelStatistics main = make_statistics(db_to_linear(10.0), {4, 1.0, 40.0, 5.0}, 4);
    const ChannelStatistics eave = make_statistics(db_to_linear(0.0), {4, 1.0, -10.0, 5.0}, 2);
    const Precoder zero(HermitianMatrix::zero(4), Strategy::Isotropic, 4.0);
    CHECK(lsl_objective(1.3, 0.7, main, eave, zero) == 0.0);
    CHECK(lsl_objective(1.0, 1.0, main, main, full(4)) == 0.0);

    // direct evaluation with explicit log-determinants of the two transmit terms
    const double em = 2.0, ee = 0.5;
    const ComplexMatrix eye = ComplexMatrix::Identity(4, 4);
    const double lm = std::log((eye + main.beta() * em * main.t_corr().matrix()).determinant().real());
    const double le = std::log((eye + eave.beta() * ee * eave.t_corr().matrix()).determinant().real());
    CHECK_THAT(lsl_objective(em, ee, main, eave, full(4)), WithinAbs(std::max(0.0, (lm - le) / 4.0), 1e-12));

    const ChannelStatistics other = make_statistics(1.0, {3, 1.0, 0.0, 5.0}, 2);
    CHECK_THROWS_AS(lsl_objective(1.0, 1.0, main, other, full(4)), DimensionMismatch);
}

TEST_CASE("large-system value tracks Monte Carlo at 64 antennas")
{
    const Index m = 64;
    const ChannelStatistics stats = make_statistics(db_to_linear(10.0), {m, 0.5, 40.0, 10.0}, m);
    const double lsl = lsl_mutual_information(stats, full(m), solve_fixed_point(stats, full(m)));
    const McEstimate mc = mc_ergodic_mi(stats, full(m), 200, 3);
    CHECK(std::abs(lsl - mc.mean) <= 0.005 * mc.mean);
}
