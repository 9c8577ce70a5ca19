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

#ifndef WIRETAP_WIRETAP_HPP
#define WIRETAP_WIRETAP_HPP

#include "errors.hpp"
#include "matdecomp.hpp"
#include "quadrature.hpp"
#include "channel.hpp"
#include "precoder.hpp"
#include "detequiv.hpp"
#include "precoders.hpp"
#include "montecarlo.hpp"
#include "experiment.hpp"

#endif
