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

#ifndef WIRETAP_ERRORS_HPP
#define WIRETAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wiretap
{
    // Base class for every error raised by the library
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Linear algebra
    class NotPositiveDefinite : public Error
    {
    public:
        using Error::Error;
    };

    class NotPsd : public Error
    {
    public:
        using Error::Error;
    };

    class ConvergenceFailure : public Error
    {
    public:
        using Error::Error;
    };

    class RankDeficient : public Error
    {
    public:
        using Error::Error;
    };

    class DimensionMismatch : public Error
    {
    public:
        using Error::Error;
    };

    // Channel model
    class QuadratureFailure : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    // Deterministic equivalent
    class NoConvergence : public Error
    {
    public:
        using Error::Error;
    };

    // Precoders
    class AllZeroGains : public Error
    {
    public:
        using Error::Error;
    };

    class BisectionFailure : public Error
    {
    public:
        using Error::Error;
    };

    // Experiment configuration
    class ParseError : public Error
    {
    public:
        using Error::Error;
    };

    class ValidationError : public Error
    {
    public:
        using Error::Error;
    };

    class UnknownPreset : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
