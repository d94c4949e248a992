// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORR_QCORR_HPP
#define QCORR_QCORR_HPP

#include "qcorr/decomposition.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_io.hpp"
#include "qcorr/states.hpp"
#include "qcorr/version.hpp"

#endif  // QCORR_QCORR_HPP
