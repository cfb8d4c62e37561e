// Copyright 2026 The pmlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the pmlkit library.

#ifndef PMLKIT_PMLKIT_H_
#define PMLKIT_PMLKIT_H_

#include "pmlkit/alphabet.h"
#include "pmlkit/closed_form.h"
#include "pmlkit/density.h"
#include "pmlkit/distribution.h"
#include "pmlkit/leakage.h"
#include "pmlkit/model_io.h"
#include "pmlkit/oracles.h"
#include "pmlkit/report.h"

#endif  // PMLKIT_PMLKIT_H_
