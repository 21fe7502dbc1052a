/*
 * Copyright 2026 The sevdel Authors.
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

#ifndef SEVDEL_CLOCK_HPP_
#define SEVDEL_CLOCK_HPP_

#include <cstdint>
#include <string>

#include "sevdel/error.hpp"

namespace sevdel {

// Integer simulation time, advanced explicitly by whoever drives the run.
class LogicalClock {
 public:
  std::uint64_t now() const { return now_; }

  void advance_to(std::uint64_t t) {
    if (t < now_) {
      throw Error(ErrorCode::kClockRegression,
                  "cannot move from " + std::to_string(now_) + " to " + std::to_string(t));
    }
    now_ = t;
  }
  void tick() { ++now_; }

 private:
  std::uint64_t now_ = 0;
};

}  // namespace sevdel

#endif  // SEVDEL_CLOCK_HPP_
