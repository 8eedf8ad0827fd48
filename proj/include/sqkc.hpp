// Copyright 2026 The SQKC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "sqkc/amplitude_estimation.hpp"
#include "sqkc/classifiers.hpp"
#include "sqkc/datasets.hpp"
#include "sqkc/encoding.hpp"
#include "sqkc/errors.hpp"
#include "sqkc/experiments.hpp"
#include "sqkc/gates.hpp"
#include "sqkc/io.hpp"
#include "sqkc/parallel.hpp"
#include "sqkc/rng.hpp"
#include "sqkc/state_vector.hpp"
#include "sqkc/statistics.hpp"
#include "sqkc/tolerance.hpp"
