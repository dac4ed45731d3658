// Copyright (c) 2026 The livseg Authors
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

#ifndef LIVSEG__LIVSEG_HPP_
#define LIVSEG__LIVSEG_HPP_

#include "livseg/calibration.hpp"
#include "livseg/components.hpp"
#include "livseg/contour.hpp"
#include "livseg/error.hpp"
#include "livseg/evaluation.hpp"
#include "livseg/filtering.hpp"
#include "livseg/histogram.hpp"
#include "livseg/image.hpp"
#include "livseg/parallel.hpp"
#include "livseg/phantom.hpp"
#include "livseg/pipeline.hpp"
#include "livseg/pnm.hpp"

#endif  // LIVSEG__LIVSEG_HPP_
