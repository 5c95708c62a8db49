// SPDX-License-Identifier: Apache-2.0
//
// zdmt: diversity-multiplexing tradeoff of the MIMO Z interference channel
// Copyright (C) 2026 The zdmt authors
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

#pragma once

#include "zdmt/closed_form.hpp"
#include "zdmt/errors.hpp"
#include "zdmt/exponents.hpp"
#include "zdmt/montecarlo.hpp"
#include "zdmt/pl_program.hpp"
#include "zdmt/ptp.hpp"
#include "zdmt/simplex.hpp"
#include "zdmt/solve.hpp"
#include "zdmt/validation.hpp"
