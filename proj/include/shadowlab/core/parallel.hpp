/*
 * Copyright 2026 The shadowlab authors
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

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace shadowlab {

/// Process-wide worker count. 0 means "use hardware concurrency".
void set_worker_count(int workers);
int worker_count();

/**
 * Runs fn(i) for i in [0, n). Work is distributed over a small thread pool;
 * each index writes only to its own output slot, so the result is identical
 * for any worker count. Exceptions are captured and rethrown on the caller.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace shadowlab
