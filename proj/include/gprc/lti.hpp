/*
 * Copyright 2026 The gprc Authors
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

#pragma once

#include "gprc/lti/polynomial.hpp"
#include "gprc/lti/transfer_function.hpp"
#include "gprc/lti/state_space.hpp"
#include "gprc/lti/discretize.hpp"
#include "gprc/lti/frequency_response.hpp"
#include "gprc/lti/feedback.hpp"
