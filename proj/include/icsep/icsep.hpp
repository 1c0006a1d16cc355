// SPDX-License-Identifier: Apache-2.0
//
// icsep: rate and outerbound toolkit for 3-user Gaussian interference channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "icsep/channel.hpp"
#include "icsep/dof.hpp"
#include "icsep/game.hpp"
#include "icsep/outerbounds.hpp"
#include "icsep/power.hpp"
#include "icsep/rates.hpp"
#include "icsep/sweep.hpp"
