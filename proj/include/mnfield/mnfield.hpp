// Copyright 2026 The mnfield Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MNFIELD_MNFIELD_HPP
#define MNFIELD_MNFIELD_HPP

#include "mnfield/bell_stirling.hpp"
#include "mnfield/coeff_arith.hpp"
#include "mnfield/cyclotomic.hpp"
#include "mnfield/error.hpp"
#include "mnfield/exponent.hpp"
#include "mnfield/hahn_series.hpp"
#include "mnfield/json_io.hpp"
#include "mnfield/newton_polygon.hpp"
#include "mnfield/transfinite_newton.hpp"
#include "mnfield/uniformizer.hpp"
#include "mnfield/verify.hpp"

#endif  // MNFIELD_MNFIELD_HPP
