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

#ifndef WIRETAP_QUADRATURE_HPP
#define WIRETAP_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace wiretap
{
    // Gauss-Legendre rule on [-1, 1]
    struct GaussLegendreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    // Nodes by Newton iteration on P_n from the Chebyshev-like initial guess, using
    // symmetry x_{n-1-i} = -x_i.
    inline GaussLegendreRule gauss_legendre(std::size_t n)
    {
        GaussLegendreRule rule;
        rule.nodes.assign(n, 0.0);
        rule.weights.assign(n, 0.0);
        const std::size_t half = (n + 1) / 2;
        const double dn = static_cast<double>(n);
        // returns (P_n(x), P_n'(x)) by the three-term recurrence
        auto legendre = [n, dn](double x)
        {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k)
            {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            return std::pair{p1, dn * (x * p1 - p0) / (x * x - 1.0)};
        };
        for (std::size_t i = 0; i < half; ++i)
        {
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
            for (int iter = 0; iter < 20; ++iter)
            {
                const auto [p, dp] = legendre(x);
                const double step = p / dp;
                x -= step;
                if (std::abs(step) <= 1e-14) // quadratic convergence: the next error is far below eps
                    break;
            }
            const double dp = legendre(x).second;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        if (n % 2 == 1)
            rule.nodes[n / 2] = 0.0;
        return rule;
    }

    // Shared rules for the correlation integral. Function-local statics are initialized once
    // and thread-safe.
    inline const GaussLegendreRule &gauss_legendre_4096()
    {
        static const GaussLegendreRule rule = gauss_legendre(4096);
        return rule;
    }

    inline const GaussLegendreRule &gauss_legendre_8192()
    {
        static const GaussLegendreRule rule = gauss_legendre(8192);
        return rule;
    }
}

#endif
