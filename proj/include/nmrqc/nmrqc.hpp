// Copyright 2026 The nmrqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Everything except the service layer, which pulls in the vendored JSON and
// HTTP headers.

#include "nmrqc/quantum_core.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/noise_model.hpp"
#include "nmrqc/pps.hpp"
#include "nmrqc/engine.hpp"
#include "nmrqc/tomography.hpp"
#include "nmrqc/mitigation.hpp"
#include "nmrqc/experiments.hpp"
