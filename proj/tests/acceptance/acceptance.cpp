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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <wiretap/wiretap.hpp>

using namespace wiretap;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    int failures = 0;

    void criterion(int id, const char *what, const std::function<Outcome()> &check)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d: %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", id, what, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass)
            ++failures;
    }

    ChannelStatistics white(double rho, Index m, Index n)
    {
        return ChannelStatistics(rho, HermitianMatrix::identity(m), HermitianMatrix::identity(n));
    }

    ComplexMatrix gaussian(Index rows, Index cols, std::uint64_t seed)
    {
        RngStream rng = make_stream(seed, 0xACCE);
        return complex_gaussian_matrix(rows, cols, rng);
    }

    double rel_err(const ComplexMatrix &x, const ComplexMatrix &ref) { return (x - ref).norm() / ref.norm(); }

    std::vector<double> sweep_rates(const ExperimentConfig &base, Strategy s)
    {
        ExperimentConfig c = base;
        c.strategies = {s};
        SweepOptions opts;
        opts.run_mc = false;
        std::vector<double> out;
        for (const SweepRow &row : run_sweep(c, opts).rows)
        {
            if (row.failed)
                throw std::runtime_error("sweep point " + std::to_string(row.sweep_value) + " failed: " + row.error);
            out.push_back(*row.rs_lsl);
        }
        return out;
    }
}

int main()
{
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

    criterion(1, "scalar fixed point e = delta = (sqrt5 - 1)/2 within 1e-9", [&]
              {
        const FixedPoint fp = solve_fixed_point(white(1.0, 1, 1), isotropic_precoder(1));
        const double err = std::max(std::abs(fp.e - golden), std::abs(fp.delta - golden));
        return Outcome{err <= 1e-9, fmt("e = %.12f, delta = %.12f, max err %.2e", fp.e, fp.delta, err)}; });

    criterion(2, "scalar large-system MI equals 2 ln(1 + e) - e^2 within 1e-8", [&]
              {
        const ChannelStatistics s = white(1.0, 1, 1);
        const Precoder p = isotropic_precoder(1);
        const double mi = lsl_mutual_information(s, p, solve_fixed_point(s, p));
        const double oracle = 2.0 * std::log1p(golden) - golden * golden;
        return Outcome{std::abs(mi - oracle) <= 1e-8,
                       fmt("got %.10f, analytic %.10f, err %.2e", mi, oracle, std::abs(mi - oracle))}; });

    criterion(3, "scalar Rayleigh Monte Carlo (n = 1e6) within 3 SE of e E1(1)", [&]
              {
        const double closed = std::numbers::e * boost::math::expint(1, 1.0);
        boost::math::quadrature::exp_sinh<double> integrator;
        const double quad = integrator.integrate([](double x) { return std::log1p(x) * std::exp(-x); });
        if (std::abs(closed - quad) > 1e-10)
            return Outcome{false, fmt("oracles disagree: %.12f vs %.12f", closed, quad)};
        const McEstimate mc = mc_ergodic_mi(white(1.0, 1, 1), isotropic_precoder(1), 1000000, 20260101);
        const double dev = std::abs(mc.mean - quad) / mc.std_error;
        return Outcome{dev <= 3.0, fmt("mean %.6f, oracle %.6f, SE %.2e, |dev| %.2f SE", mc.mean, quad, mc.std_error, dev)}; });

    criterion(4, "i.i.d. 64x64 at rho = 10: |MC - LSL| / LSL <= 0.5% (n = 200)", [&]
              {
        const ChannelStatistics s = white(10.0, 64, 64);
        const Precoder p = isotropic_precoder(64);
        const double lsl = lsl_mutual_information(s, p, solve_fixed_point(s, p));
        const McEstimate mc = mc_ergodic_mi(s, p, 200, 64);
        const double rel = std::abs(mc.mean - lsl) / lsl;
        return Outcome{rel <= 0.005, fmt("LSL %.6f, MC %.6f, rel %.3e", lsl, mc.mean, rel)}; });

    criterion(5, "six-antenna geometry at 0/10/20 dB: |LSL - MC| <= max(3 SE, 2% MC), n = 10000", [&]
              {
        const ExperimentConfig c = figure_preset("fig2");
        const std::vector<double> grid{0.0, 10.0, 20.0};
        const auto rows = validate_lsl(c, grid, 10000, 1);
        bool ok = rows.size() == 9;
        std::string detail;
        for (const ValidationRow &r : rows)
        {
            ok = ok && !r.flagged;
            detail += fmt("%s%s@%g: %.4f/%.4f", detail.empty() ? "" : ", ", std::string(to_string(r.strategy)).c_str(),
                          r.snr_db, r.rs_lsl, r.rs_mc);
            if (r.flagged)
                detail += "!";
        }
        return Outcome{ok, "LSL/MC nats " + detail}; });

    criterion(6, "two-antenna geometry: GSVD >= WF - 1e-9 and >= iso - 1e-9 at every SNR", [&]
              {
        const ExperimentConfig c = figure_preset("fig3");
        const auto iso = sweep_rates(c, Strategy::Isotropic);
        const auto wf = sweep_rates(c, Strategy::WaterFilling);
        const auto gs = sweep_rates(c, Strategy::GsvdBeamforming);
        bool ok = true;
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < gs.size(); ++i)
        {
            ok = ok && gs[i] >= wf[i] - 1e-9 && gs[i] >= iso[i] - 1e-9;
            margin = std::min(margin, gs[i] - std::max(wf[i], iso[i]));
        }
        return Outcome{ok, fmt("%zu points, min GSVD margin %.4f nats", gs.size(), margin)}; });

    criterion(7, "N_E = 12: iso = 0, WF = 0, GSVD > 0", [&]
              {
        const auto [sm, se] = build_links(figure_preset("fig4"), 12.0);
        const double iso = optimize(Strategy::Isotropic, sm, se).evaluation.rate.rs;
        const double wf = optimize(Strategy::WaterFilling, sm, se).evaluation.rate.rs;
        const double gs = optimize(Strategy::GsvdBeamforming, sm, se).evaluation.rate.rs;
        return Outcome{iso == 0.0 && wf == 0.0 && gs > 0.0, fmt("iso %.3g, wf %.3g, gsvd %.4f nats", iso, wf, gs)}; });

    criterion(8, "GSVD rate vs spacing 0.2..3.0 has strict interior local max and min (margin 1e-6)", [&]
              {
        const ExperimentConfig c = figure_preset("fig5");
        const auto rs = sweep_rates(c, Strategy::GsvdBeamforming);
        std::string maxima, minima;
        for (std::size_t i = 1; i + 1 < rs.size(); ++i)
        {
            if (rs[i] > rs[i - 1] + 1e-6 && rs[i] > rs[i + 1] + 1e-6)
                maxima += fmt(" %.1f", c.sweep_grid[i]);
            if (rs[i] < rs[i - 1] - 1e-6 && rs[i] < rs[i + 1] - 1e-6)
                minima += fmt(" %.1f", c.sweep_grid[i]);
        }
        return Outcome{!maxima.empty() && !minima.empty(),
                       "max at" + (maxima.empty() ? " none" : maxima) + ", min at" + (minima.empty() ? " none" : minima)}; });

    criterion(9, "GSVD on 100 random pairs: reconstruction, C^2 + S^2 = I, unitarity, power budget", [&]
              {
        double recon = 0.0, cs = 0.0, unit = 0.0, power = 0.0;
        int active = 0;
        for (std::uint64_t trial = 0; trial < 100; ++trial)
        {
            const Index m = 2 + static_cast<Index>(trial % 7);
            const ComplexMatrix a = gaussian(m, m, 2 * trial);
            const ComplexMatrix b = gaussian(m, m, 2 * trial + 1);
            const GsvdFactorization f = gsvd(a, b);
            const ComplexMatrix eye = ComplexMatrix::Identity(m, m);
            recon = std::max(recon, rel_err(f.u_m * f.sigma_m.cast<Complex>().asDiagonal() * f.v.adjoint(), a));
            recon = std::max(recon, rel_err(f.u_e * f.sigma_e.cast<Complex>().asDiagonal() * f.v.adjoint(), b));
            cs = std::max(cs, ((f.sigma_m.cwiseAbs2() + f.sigma_e.cwiseAbs2()).array() - 1.0).abs().maxCoeff());
            unit = std::max(unit, (f.u_m.adjoint() * f.u_m - eye).norm());
            unit = std::max(unit, (f.u_e.adjoint() * f.u_e - eye).norm());

            // the precoder built on a random pair of correlated links
            const ComplexMatrix ga = gaussian(m, m, 1000 + trial);
            const ComplexMatrix gb = gaussian(m, m, 2000 + trial);
            const ChannelStatistics sm(1.0, HermitianMatrix(eye + ga * ga.adjoint() / double(m)), HermitianMatrix::identity(m));
            const ChannelStatistics se(1.0, HermitianMatrix(eye + gb * gb.adjoint() / double(m)), HermitianMatrix::identity(m));
            const GsvdDesign d = gsvd_design(sm, se, 0.5 + 0.01 * double(trial), 0.7);
            if (d.allocation.levels.maxCoeff() > 0.0)
            {
                ++active;
                power = std::max(power, std::abs(d.allocation.levels.dot(d.factorization.v_inv_gram_diag) - double(m)));
            }
        }
        const bool ok = recon <= 1e-8 && cs <= 1e-10 && unit <= 1e-10 && power <= 1e-8 && active > 0;
        return Outcome{ok, fmt("recon %.1e, cs %.1e, unitarity %.1e, power %.1e over %d active designs", recon, cs, unit,
                               power, active)}; });

    criterion(10, "identical links: LSL rate and clamped MC rate are 0 for every strategy", [&]
              {
        const auto [sm, se_unused] = build_links(figure_preset("fig2"), 10.0);
        (void)se_unused;
        bool ok = true;
        std::string detail;
        for (Strategy s : all_strategies)
        {
            const OptimizationResult r = optimize(s, sm, sm);
            const McEstimate mc = mc_secrecy_rate(sm, sm, r.precoder, 1000, 3);
            ok = ok && r.evaluation.rate.rs == 0.0 && mc.mean == 0.0;
            detail += fmt("%s%s %g/%g", detail.empty() ? "" : ", ", std::string(to_string(s)).c_str(),
                          r.evaluation.rate.rs, mc.mean);
        }
        return Outcome{ok, "LSL/MC " + detail}; });

    criterion(11, "water-filling on 50 random gain vectors: complementary slackness and budget", [&]
              {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> size(1, 12);
        std::lognormal_distribution<double> gain(0.0, 2.0);
        std::uniform_real_distribution<double> budget(0.1, 20.0);
        std::bernoulli_distribution zero(0.2);
        double slack = 0.0, sum_err = 0.0;
        bool sign_ok = true;
        for (int trial = 0; trial < 50; ++trial)
        {
            RealVector g(size(rng));
            for (Index i = 0; i < g.size(); ++i)
                g(i) = zero(rng) ? 0.0 : gain(rng);
            if (g.maxCoeff() == 0.0)
                g(0) = 1.0;
            const double b = budget(rng);
            const PowerAllocation a = waterfill_levels(g, b);
            const double water = 1.0 / a.mu;
            sum_err = std::max(sum_err, std::abs(a.levels.sum() - b) / std::max(1.0, b));
            for (Index i = 0; i < g.size(); ++i)
            {
                sign_ok = sign_ok && a.levels(i) >= 0.0;
                if (a.levels(i) > 0.0)
                    slack = std::max(slack, std::abs(a.levels(i) - (water - 1.0 / g(i))) / water);
                else if (g(i) > 0.0)
                    sign_ok = sign_ok && water - 1.0 / g(i) <= 1e-12 * water;
            }
        }
        return Outcome{sign_ok && slack <= 1e-12 && sum_err <= 1e-10,
                       fmt("max slackness gap %.1e (relative to water level), budget err %.1e", slack, sum_err)}; });

    std::printf("%s: %d of 11 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
