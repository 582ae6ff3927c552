// Copyright 2026 The ybe4 Authors
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

// Umbrella header for the numerical core. The JSON layer (io.hpp,
// commands.hpp) is separate because it needs nlohmann/json.

#pragma once

#include "ybe4/bracket.hpp"
#include "ybe4/classify.hpp"
#include "ybe4/entangle.hpp"
#include "ybe4/errors.hpp"
#include "ybe4/families.hpp"
#include "ybe4/linalg.hpp"
#include "ybe4/lsq.hpp"
#include "ybe4/random.hpp"
#include "ybe4/ybe.hpp"
