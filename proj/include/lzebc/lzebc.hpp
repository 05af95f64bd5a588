// Copyright 2026 The lzebc Authors
// SPDX-License-Identifier: Apache-2.0
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

#ifndef LZEBC_LZEBC_HPP_
#define LZEBC_LZEBC_HPP_

#include "lzebc/archive.hpp"
#include "lzebc/codebook.hpp"
#include "lzebc/compressibility.hpp"
#include "lzebc/error.hpp"
#include "lzebc/grid.hpp"
#include "lzebc/huffman.hpp"
#include "lzebc/pipeline.hpp"
#include "lzebc/psum.hpp"
#include "lzebc/quantizer.hpp"
#include "lzebc/rle.hpp"

#endif  // LZEBC_LZEBC_HPP_
