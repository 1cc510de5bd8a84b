// Copyright 2026 The spinrecouple Authors
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

#pragma once

#include "spinrecouple/dense_oracle.hpp"
#include "spinrecouple/engine.hpp"
#include "spinrecouple/errors.hpp"
#include "spinrecouple/json_io.hpp"
#include "spinrecouple/ponzano_regge.hpp"
#include "spinrecouple/rational.hpp"
#include "spinrecouple/recoupling.hpp"
#include "spinrecouple/surd.hpp"
#include "spinrecouple/symrep.hpp"
#include "spinrecouple/trees.hpp"
#include "spinrecouple/twice_spin.hpp"
