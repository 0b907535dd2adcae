#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The vcbundle Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "vcb/auction.hpp"
#include "vcb/bundle.hpp"
#include "vcb/core.hpp"
#include "vcb/equilibrium.hpp"
#include "vcb/error.hpp"
#include "vcb/ineff.hpp"
#include "vcb/plane.hpp"
#include "vcb/rational.hpp"
#include "vcb/sigma.hpp"
#include "vcb/valuation.hpp"
