// Copyright 2026 The cvcluster Authors
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

#include "cvcluster/errors.hpp"
#include "cvcluster/exact_scalar.hpp"
#include "cvcluster/exact_matrix.hpp"
#include "cvcluster/bs_network.hpp"
#include "cvcluster/hadamard.hpp"
#include "cvcluster/cluster_zoo.hpp"
#include "cvcluster/symplectic.hpp"
#include "cvcluster/gauss_gates.hpp"
#include "cvcluster/gauss_sim.hpp"
#include "cvcluster/verify.hpp"
