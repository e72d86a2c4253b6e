// Copyright 2026 The ROE Certify Authors
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

#ifndef ROE_PARALLEL_HPP_
#define ROE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace roe {

// Worker count: hardware concurrency, capped by ROE_THREADS when set.
std::size_t ThreadCount();

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any task is rethrown after all workers finish.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn,
                 std::size_t threads = ThreadCount());

}  // namespace roe

#endif  // ROE_PARALLEL_HPP_
