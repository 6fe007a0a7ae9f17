// Copyright 2026 The NLK Authors
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

// Umbrella header.

#ifndef NLK_NLK_HPP
#define NLK_NLK_HPP

#include "nlk/beauty_contest.hpp"
#include "nlk/centipede.hpp"
#include "nlk/error.hpp"
#include "nlk/estimation.hpp"
#include "nlk/game.hpp"
#include "nlk/io.hpp"
#include "nlk/money_request.hpp"
#include "nlk/optimize.hpp"
#include "nlk/reports.hpp"
#include "nlk/solver.hpp"
#include "nlk/wallet_auction.hpp"

#endif  // NLK_NLK_HPP
