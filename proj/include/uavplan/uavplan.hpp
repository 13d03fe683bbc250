/*
 * Copyright 2026 The uavplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef UAVPLAN_UAVPLAN_HPP
#define UAVPLAN_UAVPLAN_HPP

#include <uavplan/association.hpp>
#include <uavplan/baselines.hpp>
#include <uavplan/channel.hpp>
#include <uavplan/deploy_init.hpp>
#include <uavplan/errors.hpp>
#include <uavplan/feasibility.hpp>
#include <uavplan/fleet.hpp>
#include <uavplan/format.hpp>
#include <uavplan/geometry.hpp>
#include <uavplan/harness.hpp>
#include <uavplan/scenario.hpp>
#include <uavplan/scenario_io.hpp>
#include <uavplan/trace.hpp>
#include <uavplan/units.hpp>
#include <uavplan/vforce.hpp>

#endif // UAVPLAN_UAVPLAN_HPP
