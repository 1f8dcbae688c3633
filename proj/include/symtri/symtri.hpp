// Copyright 2026 The symtri Authors
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

#include "symtri/certificates.hpp"
#include "symtri/constants.hpp"
#include "symtri/dist.hpp"
#include "symtri/inflation.hpp"
#include "symtri/lin/poly2.hpp"
#include "symtri/lin/sparse.hpp"
#include "symtri/localmodel.hpp"
#include "symtri/lp/solver.hpp"
#include "symtri/lp/standard_lp.hpp"
#include "symtri/lp/verify.hpp"
#include "symtri/rational.hpp"
#include "symtri/scan.hpp"
#include "symtri/symmetry.hpp"
