/*
 * Copyright 2026 The hardymontel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "hardymontel/bohr.hpp"
#include "hardymontel/bounds.hpp"
#include "hardymontel/compact_box.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/generators.hpp"
#include "hardymontel/io.hpp"
#include "hardymontel/montel.hpp"
#include "hardymontel/numeric.hpp"
#include "hardymontel/polytorus.hpp"
#include "hardymontel/series.hpp"
#include "hardymontel/suites.hpp"
