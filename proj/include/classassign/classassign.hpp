// Copyright 2026 The classassign Authors
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

#include "classassign/analyze.hpp"
#include "classassign/assign.hpp"
#include "classassign/core.hpp"
#include "classassign/error.hpp"
#include "classassign/flow.hpp"
#include "classassign/io.hpp"
#include "classassign/mechanisms.hpp"
#include "classassign/oracle.hpp"
#include "classassign/random.hpp"
