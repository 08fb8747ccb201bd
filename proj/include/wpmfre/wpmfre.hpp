// Copyright 2026 The wpmfre Authors
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

#ifndef WPMFRE_WPMFRE_HPP_
#define WPMFRE_WPMFRE_HPP_

#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/generator.hpp"
#include "wpmfre/io.hpp"
#include "wpmfre/optimizer.hpp"
#include "wpmfre/oracle.hpp"
#include "wpmfre/simplification.hpp"
#include "wpmfre/solution_lattice.hpp"
#include "wpmfre/wpm_operator.hpp"

#endif  // WPMFRE_WPMFRE_HPP_
