// Copyright 2026 The Sikorski Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace sikorski {

/// Worker count from SIKORSKI_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

/// Calls body(i) for every i in [0, n), spread over worker_count() threads.
/// Each index is handled exactly once; if any call throws, the exception of
/// the lowest failing index is rethrown after all workers finish, so error
/// reporting does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sikorski
